//! Cube models of subdivided Coxeter spheres.
//!
//! Vertices live in `{−1,0,1}ⁿ ∖ {0}`. The barycentric-style *s-order*
//! compares vertices by containment of their positive and negative supports;
//! the *u-order* lives on the *real* vertices (those that are non-negative or
//! non-positive) and mixes same-sign s-adjacency with a disjoint-support rule
//! across signs, where each mixed edge carries a *fake* midpoint.
//!
//! The module builds the full cube complex ([`bn_complex`]), the sphere of
//! the skewed type-A arrangement with its subdivision ([`an_sphere`],
//! cross-validated against an actual arrangement computation), the
//! edge-subdivided type-D sphere with its type-preserving isomorphism onto
//! the cube complex ([`dn_subdivision`]), plus inversion, products, and the
//! positive part. Finite Coxeter data ([`CoxeterMatrix`], [`SignedPerm`]) is
//! shared with the Garside machinery elsewhere in the crate.

use crate::arrangement::{enumerate_covectors, ArrError};
use crate::exactgeom::{rat, Rational, Sign};
use crate::families::{reflection_arrangement, BlockKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CoxError {
    #[error("vertex coordinates must lie in {{−1,0,1}} and not all be zero")]
    ZeroVector,
    #[error("operation requires a real vertex (non-negative or non-positive)")]
    NotReal,
    #[error("operation requires a fake vertex (mixed signs)")]
    NotFake,
    #[error("rank out of range: {0}")]
    BadRank(usize),
    #[error("cross-check against the arrangement computation failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Arrangement(#[from] ArrError),
    #[error(transparent)]
    Geom(#[from] crate::exactgeom::GeomError),
}

/// A vertex of the cube model: a nonzero vector with entries in `{−1,0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoxVertex {
    coords: Vec<i8>,
}

impl CoxVertex {
    pub fn new(coords: Vec<i8>) -> Result<CoxVertex, CoxError> {
        if coords.iter().any(|&c| !(-1..=1).contains(&c)) || coords.iter().all(|&c| c == 0) {
            return Err(CoxError::ZeroVector);
        }
        Ok(CoxVertex { coords })
    }

    pub fn coords(&self) -> &[i8] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Indices with coordinate +1.
    pub fn pos(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices with coordinate −1.
    pub fn neg(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == -1)
            .map(|(i, _)| i)
            .collect()
    }

    fn pos_mask(&self) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .fold(0, |m, (i, &c)| if c == 1 { m | (1 << i) } else { m })
    }

    fn neg_mask(&self) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .fold(0, |m, (i, &c)| if c == -1 { m | (1 << i) } else { m })
    }

    /// Number of nonzero coordinates.
    pub fn s_type(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_non_negative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_non_positive(&self) -> bool {
        self.coords.iter().all(|&c| c <= 0)
    }

    /// Real vertices are the non-negative or non-positive ones.
    pub fn is_real(&self) -> bool {
        self.is_non_negative() || self.is_non_positive()
    }

    /// The level type of a real vertex: `s` for non-negative vertices,
    /// `n + 1 − s` for non-positive ones.
    pub fn u_type(&self) -> Result<usize, CoxError> {
        if self.is_non_negative() {
            Ok(self.s_type())
        } else if self.is_non_positive() {
            Ok(self.dim() + 1 - self.s_type())
        } else {
            Err(CoxError::NotReal)
        }
    }

    pub fn to_point(&self) -> Vec<Rational> {
        self.coords.iter().map(|&c| rat(c as i64)).collect()
    }
}

impl std::fmt::Display for CoxVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let inner: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// The negation map `v ↦ −v`: swaps positive and negative supports,
/// preserves the s-type, and reverses the u-order on real vertices.
pub fn inversion(v: &CoxVertex) -> CoxVertex {
    CoxVertex {
        coords: v.coords.iter().map(|&c| -c).collect(),
    }
}

/// s-adjacency: the supports of one vertex nest inside the other's.
pub fn s_adjacent(v: &CoxVertex, w: &CoxVertex) -> bool {
    let (vp, vn, wp, wn) = (v.pos_mask(), v.neg_mask(), w.pos_mask(), w.neg_mask());
    (vp & wp == vp && vn & wn == vn) || (wp & vp == wp && wn & vn == wn)
}

/// s-order: `v ≤ w` iff `pos(v) ⊆ pos(w)` and `neg(v) ⊆ neg(w)`.
pub fn s_le(v: &CoxVertex, w: &CoxVertex) -> bool {
    let (vp, vn, wp, wn) = (v.pos_mask(), v.neg_mask(), w.pos_mask(), w.neg_mask());
    vp & wp == vp && vn & wn == vn
}

/// u-adjacency of two real vertices; for an adjacent mixed pair the fake
/// midpoint of the edge is returned alongside.
///
/// Same-sign pairs are u-adjacent iff s-adjacent. A mixed pair (one
/// non-negative, one non-positive, neither zero-signed both ways) is
/// u-adjacent iff the supports are disjoint; the midpoint combines the
/// positive support of one with the negative support of the other.
pub fn u_adjacent(v: &CoxVertex, w: &CoxVertex) -> Result<(bool, Option<CoxVertex>), CoxError> {
    if !v.is_real() || !w.is_real() {
        return Err(CoxError::NotReal);
    }
    if v == w {
        return Ok((false, None));
    }
    let same_sign = (v.is_non_negative() && w.is_non_negative())
        || (v.is_non_positive() && w.is_non_positive());
    if same_sign {
        return Ok((s_adjacent(v, w), None));
    }
    // Mixed pair: orient so a is non-negative and b is non-positive.
    let (a, b) = if v.is_non_negative() { (v, w) } else { (w, v) };
    let disjoint = (a.pos_mask() | a.neg_mask()) & (b.pos_mask() | b.neg_mask()) == 0;
    if !disjoint {
        return Ok((false, None));
    }
    let coords: Vec<i8> = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(&x, &y)| if x != 0 { x } else { y })
        .collect();
    let midpoint = CoxVertex::new(coords).expect("mixed midpoint is nonzero");
    Ok((true, Some(midpoint)))
}

/// u-order on real vertices: adjacent-or-equal with weakly increasing u-type.
pub fn u_le(v: &CoxVertex, w: &CoxVertex) -> Result<bool, CoxError> {
    if v == w {
        v.u_type()?;
        return Ok(true);
    }
    let (adj, _) = u_adjacent(v, w)?;
    Ok(adj && v.u_type()? <= w.u_type()?)
}

/// Componentwise positive and negative parts of a fake vertex; both are real
/// and u-adjacent, and `s(b) = s(b⁺) + s(b⁻)`.
pub fn plus_minus(b: &CoxVertex) -> Result<(CoxVertex, CoxVertex), CoxError> {
    if b.is_real() {
        return Err(CoxError::NotFake);
    }
    let plus = CoxVertex::new(b.coords.iter().map(|&c| c.max(0)).collect())
        .expect("fake vertex has a positive part");
    let minus = CoxVertex::new(b.coords.iter().map(|&c| c.min(0)).collect())
        .expect("fake vertex has a negative part");
    Ok((plus, minus))
}

/// A finite set of cube vertices carrying the s- and u- relations.
#[derive(Clone, Debug)]
pub struct TypedComplex {
    n: usize,
    vertices: Vec<CoxVertex>,
    index: BTreeMap<Vec<i8>, usize>,
}

impl TypedComplex {
    pub fn from_vertices(n: usize, mut vertices: Vec<CoxVertex>) -> TypedComplex {
        vertices.sort();
        vertices.dedup();
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.coords.clone(), i))
            .collect();
        TypedComplex { n, vertices, index }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[CoxVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn find(&self, v: &CoxVertex) -> Option<usize> {
        self.index.get(v.coords()).copied()
    }

    /// Maximal s-type over the vertex set (the rank of the s-order).
    pub fn rank(&self) -> usize {
        self.vertices.iter().map(|v| v.s_type()).max().unwrap_or(0)
    }

    /// All vertices marked real, in order.
    pub fn real_vertices(&self) -> Vec<&CoxVertex> {
        self.vertices.iter().filter(|v| v.is_real()).collect()
    }

    pub fn fake_vertices(&self) -> Vec<&CoxVertex> {
        self.vertices.iter().filter(|v| !v.is_real()).collect()
    }

    /// Number of vertices of each s-type `1 ..= n`.
    pub fn s_type_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n];
        for v in &self.vertices {
            counts[v.s_type() - 1] += 1;
        }
        counts
    }

    /// Hasse diagram of the s-order in DOT format (covers only).
    pub fn to_dot_s_hasse(&self) -> String {
        let mut out = String::from("digraph s_order {\n  rankdir=BT;\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\" [label=\"{v}\\ns={}\"];\n", v.s_type()));
        }
        for v in &self.vertices {
            for w in &self.vertices {
                if v != w && s_le(v, w) && w.s_type() == v.s_type() + 1 {
                    out.push_str(&format!("  \"{v}\" -> \"{w}\";\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// JSON table of vertices with types and the full order relations.
    pub fn to_json_tables(&self) -> serde_json::Value {
        let verts: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::json!({
                    "coords": v.coords(),
                    "s": v.s_type(),
                    "u": v.u_type().ok(),
                    "real": v.is_real(),
                })
            })
            .collect();
        let mut s_pairs = Vec::new();
        let mut u_pairs = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            for (j, w) in self.vertices.iter().enumerate() {
                if i != j && s_le(v, w) {
                    s_pairs.push(serde_json::json!([i, j]));
                }
                if i != j && v.is_real() && w.is_real() && u_le(v, w).unwrap_or(false) {
                    u_pairs.push(serde_json::json!([i, j]));
                }
            }
        }
        serde_json::json!({
            "ambient_dim": self.n,
            "vertices": verts,
            "s_lt": s_pairs,
            "u_lt": u_pairs,
        })
    }
}

/// The full cube complex: all of `{−1,0,1}ⁿ ∖ {0}` with the s/u machinery.
pub fn bn_complex(n: usize) -> TypedComplex {
    assert!(n >= 1, "cube complex needs n ≥ 1");
    assert!(n <= 16, "cube complex only supported up to n = 16");
    let mut vertices = Vec::with_capacity(3usize.pow(n as u32) - 1);
    let mut stack = vec![Vec::with_capacity(n)];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            if prefix.iter().any(|&c| c != 0) {
                vertices.push(CoxVertex { coords: prefix });
            }
            continue;
        }
        for c in [-1i8, 0, 1] {
            let mut next = prefix.clone();
            next.push(c);
            stack.push(next);
        }
    }
    TypedComplex::from_vertices(n, vertices)
}

/// The sub-poset of non-negative vertices: a Boolean lattice minus its
/// bottom, with the s-order as subset order.
pub fn positive_part(n: usize) -> TypedComplex {
    let full = bn_complex(n);
    let vertices = full
        .vertices
        .into_iter()
        .filter(|v| v.is_non_negative())
        .collect();
    TypedComplex::from_vertices(n, vertices)
}

/// Product of cube complexes over disjoint coordinate blocks: each factor
/// contributes one of its vertices or its adjoined minimum (the zero vector),
/// and the all-minimum combination is dropped. Supports and hence both
/// orders act componentwise.
pub fn product_complex(factors: &[&TypedComplex]) -> TypedComplex {
    let n: usize = factors.iter().map(|f| f.n).sum();
    let mut combos: Vec<Vec<i8>> = vec![Vec::new()];
    for f in factors {
        let mut next = Vec::new();
        for prefix in &combos {
            // The adjoined minimum of this factor.
            let mut with_zero = prefix.clone();
            with_zero.extend(std::iter::repeat_n(0i8, f.n));
            next.push(with_zero);
            for v in &f.vertices {
                let mut ext = prefix.clone();
                ext.extend_from_slice(v.coords());
                next.push(ext);
            }
        }
        combos = next;
    }
    let vertices = combos
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|coords| CoxVertex { coords })
        .collect();
    TypedComplex::from_vertices(n, vertices)
}

/// The sphere of the skewed type-A arrangement and its cube subdivision.
///
/// The subdivided sphere is definitionally the cube complex; the real
/// complex is the subcomplex of real vertices under the u-machinery. For
/// `n ≤ 4` the real picture is recomputed from the actual arrangement
/// (`{xᵢ = 0} ∪ {xᵢ − xⱼ = 0}`): its rays must be exactly the real vertices
/// and its 2-dimensional cones must realize exactly the u-adjacent pairs;
/// any mismatch is an error. Beyond `n = 4` the arrangement cross-check is
/// skipped for time and the combinatorial model is used directly.
pub fn an_sphere(n: usize) -> Result<(TypedComplex, TypedComplex), CoxError> {
    let subdivided = bn_complex(n);
    let real = TypedComplex::from_vertices(
        n,
        subdivided
            .vertices
            .iter()
            .filter(|v| v.is_real())
            .cloned()
            .collect(),
    );
    if n <= 4 {
        cross_check_against_arrangement(n, &real)?;
    }
    Ok((real, subdivided))
}

fn cross_check_against_arrangement(n: usize, real: &TypedComplex) -> Result<(), CoxError> {
    let arr = reflection_arrangement(BlockKind::SkewedA, n)?;
    let covectors = enumerate_covectors(&arr)?;
    let hs = arr.hyperplanes();
    // Rays: 1-dimensional cones. Their integer direction is recovered from
    // the sign pattern of the witness, then validated by re-evaluation.
    let mut rays: BTreeSet<Vec<i8>> = BTreeSet::new();
    let mut ray_cov: BTreeMap<Vec<Sign>, Vec<i8>> = BTreeMap::new();
    for (cov, witness) in &covectors {
        let zeros: Vec<_> = cov
            .iter()
            .zip(hs)
            .filter(|(&s, _)| s == Sign::Zero)
            .map(|(_, h)| h.clone())
            .collect();
        let flat = crate::exactgeom::flat_of(&zeros, n)?.expect("realized covector");
        if flat.dim() != 1 {
            continue;
        }
        let dir: Vec<i8> = witness
            .iter()
            .map(|x| match Sign::of(x) {
                Sign::Neg => -1,
                Sign::Zero => 0,
                Sign::Pos => 1,
            })
            .collect();
        // The claimed ray direction must itself realize the covector.
        let p: Vec<Rational> = dir.iter().map(|&c| rat(c as i64)).collect();
        for (h, &s) in hs.iter().zip(cov) {
            if h.eval_sign(&p)? != s {
                return Err(CoxError::CrossCheck(format!(
                    "ray witness {dir:?} does not realize its covector"
                )));
            }
        }
        rays.insert(dir.clone());
        ray_cov.insert(cov.clone(), dir);
    }
    let model: BTreeSet<Vec<i8>> = real.vertices.iter().map(|v| v.coords().to_vec()).collect();
    if rays != model {
        return Err(CoxError::CrossCheck(format!(
            "arrangement rays ({}) differ from real vertices ({})",
            rays.len(),
            model.len()
        )));
    }
    // Edges: 2-dimensional cones must span exactly the u-adjacent pairs.
    let mut cone_edges: BTreeSet<(Vec<i8>, Vec<i8>)> = BTreeSet::new();
    for (cov, _) in &covectors {
        let zeros: Vec<_> = cov
            .iter()
            .zip(hs)
            .filter(|(&s, _)| s == Sign::Zero)
            .map(|(_, h)| h.clone())
            .collect();
        let flat = crate::exactgeom::flat_of(&zeros, n)?.expect("realized covector");
        if flat.dim() != 2 {
            continue;
        }
        // Extreme rays of this cone: rays whose covector zeroes into it.
        let mut extremes: Vec<Vec<i8>> = ray_cov
            .iter()
            .filter(|(rc, _)| {
                rc.iter()
                    .zip(cov)
                    .all(|(&a, &b)| a == Sign::Zero || a == b)
            })
            .map(|(_, d)| d.clone())
            .collect();
        extremes.sort();
        if extremes.len() != 2 {
            return Err(CoxError::CrossCheck(format!(
                "2-cone with {} extreme rays; the arrangement should be simplicial",
                extremes.len()
            )));
        }
        cone_edges.insert((extremes[0].clone(), extremes[1].clone()));
    }
    let mut model_edges: BTreeSet<(Vec<i8>, Vec<i8>)> = BTreeSet::new();
    for (i, v) in real.vertices.iter().enumerate() {
        for w in real.vertices.iter().skip(i + 1) {
            if u_adjacent(v, w)?.0 {
                let (a, b) = (v.coords().to_vec(), w.coords().to_vec());
                model_edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    if cone_edges != model_edges {
        return Err(CoxError::CrossCheck(format!(
            "arrangement edges ({}) differ from u-adjacency ({})",
            cone_edges.len(),
            model_edges.len()
        )));
    }
    Ok(())
}

/// A signed permutation of coordinates: `e_i ↦ sign_i · e_{target_i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    /// `code[i] = ±(j+1)` encodes `e_i ↦ ±e_j`.
    code: Vec<i32>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            code: (0..n).map(|i| i as i32 + 1).collect(),
        }
    }

    pub fn from_images(images: &[(usize, i8)]) -> SignedPerm {
        SignedPerm {
            code: images
                .iter()
                .map(|&(j, s)| (j as i32 + 1) * s as i32)
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.code.len()
    }

    pub fn image(&self, i: usize) -> (usize, i8) {
        let c = self.code[i];
        ((c.unsigned_abs() as usize) - 1, c.signum() as i8)
    }

    /// The swap of coordinates `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> SignedPerm {
        let mut p = SignedPerm::identity(n);
        p.code.swap(i, j);
        p
    }

    /// The map `e_i ↦ −e_j`, `e_j ↦ −e_i`, identity elsewhere.
    pub fn negated_swap(n: usize, i: usize, j: usize) -> SignedPerm {
        let mut p = SignedPerm::identity(n);
        p.code[i] = -(j as i32 + 1);
        p.code[j] = -(i as i32 + 1);
        p
    }

    /// The sign flip of coordinate `i`.
    pub fn flip(n: usize, i: usize) -> SignedPerm {
        let mut p = SignedPerm::identity(n);
        p.code[i] = -p.code[i];
        p
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm {
            code: (0..self.n())
                .map(|i| {
                    let (j, s1) = other.image(i);
                    let (k, s2) = self.image(j);
                    (k as i32 + 1) * (s1 * s2) as i32
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut code = vec![0; self.n()];
        for i in 0..self.n() {
            let (j, s) = self.image(i);
            code[j] = (i as i32 + 1) * s as i32;
        }
        SignedPerm { code }
    }

    /// Number of −1 signs.
    pub fn flips(&self) -> usize {
        self.code.iter().filter(|&&c| c < 0).count()
    }

    /// Applies the linear map to an integer vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.n()];
        for (i, &x) in v.iter().enumerate() {
            let (j, s) = self.image(i);
            out[j] = s as i64 * x;
        }
        out
    }
}

/// A Coxeter matrix: symmetric with 1 on the diagonal, entries ≥ 2 off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    m: Vec<Vec<usize>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<usize>>) -> Result<CoxeterMatrix, CoxError> {
        let n = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(CoxError::BadRank(row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                let ok = if i == j { v == 1 } else { v >= 2 && m[j][i] == v };
                if !ok {
                    return Err(CoxError::BadRank(v));
                }
            }
        }
        Ok(CoxeterMatrix { m })
    }

    fn path(n: usize, orders: impl Fn(usize) -> usize) -> CoxeterMatrix {
        let mut m = vec![vec![2usize; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for i in 0..n.saturating_sub(1) {
            m[i][i + 1] = orders(i);
            m[i + 1][i] = orders(i);
        }
        CoxeterMatrix { m }
    }

    /// Linear diagram with all bonds 3 (symmetric group on `n+1` letters).
    pub fn a(n: usize) -> CoxeterMatrix {
        CoxeterMatrix::path(n, |_| 3)
    }

    /// Linear diagram with final bond 4 (signed permutations).
    pub fn b(n: usize) -> CoxeterMatrix {
        CoxeterMatrix::path(n, move |i| if i + 2 == n { 4 } else { 3 })
    }

    /// Fork diagram: path on `s₁ … s_{n−1}` plus `s_n` bonded to `s_{n−2}`
    /// (even-signed permutations); requires n ≥ 3.
    pub fn d(n: usize) -> CoxeterMatrix {
        assert!(n >= 3, "type D needs rank ≥ 3");
        let mut cm = CoxeterMatrix::path(n - 1, |_| 3);
        for row in &mut cm.m {
            row.push(2);
        }
        cm.m.push(vec![2; n]);
        cm.m[n - 1][n - 1] = 1;
        cm.m[n - 3][n - 1] = 3;
        cm.m[n - 1][n - 3] = 3;
        cm
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn order(&self, i: usize, j: usize) -> usize {
        self.m[i][j]
    }
}

/// The group of even-signed permutations of `ℝⁿ`, listed by breadth-first
/// closure over the standard generators: adjacent transpositions
/// `s_i = (i, i+1)` for `i < n`, plus the negated swap of the last two
/// coordinates.
pub fn even_signed_group(n: usize) -> Vec<SignedPerm> {
    assert!(n >= 2);
    let mut gens: Vec<SignedPerm> = (0..n - 1)
        .map(|i| SignedPerm::transposition(n, i, i + 1))
        .collect();
    gens.push(SignedPerm::negated_swap(n, n - 2, n - 1));
    let mut seen: BTreeSet<SignedPerm> = BTreeSet::new();
    let mut queue = std::collections::VecDeque::from([SignedPerm::identity(n)]);
    seen.insert(SignedPerm::identity(n));
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = w.compose(g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// One vertex of the subdivided type-D sphere: an exact lattice point on the
/// sphere together with its type label `t ∈ {1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnVertex {
    pub point: Vec<i64>,
    pub t: usize,
}

/// The edge-subdivided type-D sphere together with its verified
/// type-preserving isomorphism onto the cube complex.
#[derive(Clone, Debug)]
pub struct DnSubdivision {
    pub n: usize,
    pub vertices: Vec<DnVertex>,
    /// Maximal simplices as sorted vertex-index lists (two per group element).
    pub chambers: Vec<Vec<usize>>,
    /// Image of each vertex in the cube complex (the coordinatewise signs).
    pub to_cube: Vec<CoxVertex>,
}

/// Builds the edge-subdivided type-D sphere for `n ≥ 3` and verifies that
/// taking coordinatewise signs is a type-preserving isomorphism onto the
/// cube complex: a bijection on vertices sending the type label to the
/// s-type and the chambers exactly onto the maximal s-order chains.
pub fn dn_subdivision(n: usize) -> Result<DnSubdivision, CoxError> {
    if n < 3 {
        return Err(CoxError::BadRank(n));
    }
    let group = even_signed_group(n);
    // Base points. Scaling by 2 keeps all coordinates integral; signs are
    // unaffected. Types 1..n−2 are the prefix sums, the midpoint carries
    // type n−1, and the two half-sum points carry type n.
    let mut base: Vec<(Vec<i64>, usize)> = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        let mut p = vec![0i64; n];
        for q in p.iter_mut().take(i) {
            *q = 2;
        }
        base.push((p, i));
    }
    let mut midpoint = vec![2i64; n];
    midpoint[n - 1] = 0;
    base.push((midpoint.clone(), n - 1));
    let mut minus = vec![1i64; n];
    minus[n - 1] = -1;
    base.push((minus.clone(), n));
    let plus = vec![1i64; n];
    base.push((plus.clone(), n));

    let mut vertex_ids: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut vertices: Vec<DnVertex> = Vec::new();
    let mut chambers: Vec<Vec<usize>> = Vec::new();
    let mut chamber_set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for w in &group {
        let mut shared: Vec<usize> = Vec::new();
        for (p, t) in base.iter().take(n - 2) {
            shared.push(intern(&mut vertex_ids, &mut vertices, w.apply(p), *t));
        }
        shared.push(intern(&mut vertex_ids, &mut vertices, w.apply(&midpoint), n - 1));
        for tip in [&minus, &plus] {
            let mut simplex = shared.clone();
            simplex.push(intern(&mut vertex_ids, &mut vertices, w.apply(tip), n));
            simplex.sort_unstable();
            if chamber_set.insert(simplex.clone()) {
                chambers.push(simplex);
            }
        }
    }

    // The sign map and the isomorphism checks.
    let to_cube: Vec<CoxVertex> = vertices
        .iter()
        .map(|v| {
            CoxVertex::new(v.point.iter().map(|&x| x.signum() as i8).collect())
                .expect("sphere points are nonzero")
        })
        .collect();
    let expected = 3usize.pow(n as u32) - 1;
    let distinct: BTreeSet<&CoxVertex> = to_cube.iter().collect();
    if vertices.len() != expected || distinct.len() != expected {
        return Err(CoxError::CrossCheck(format!(
            "sign map is not a bijection: {} vertices, {} distinct images, expected {}",
            vertices.len(),
            distinct.len(),
            expected
        )));
    }
    for (v, img) in vertices.iter().zip(&to_cube) {
        if v.t != img.s_type() {
            return Err(CoxError::CrossCheck(format!(
                "type label {} does not match s-type {} at {:?}",
                v.t,
                img.s_type(),
                v.point
            )));
        }
    }
    // Chambers must map exactly onto the maximal s-chains of the cube.
    let mut image_chambers: BTreeSet<Vec<Vec<i8>>> = BTreeSet::new();
    for ch in &chambers {
        let mut imgs: Vec<Vec<i8>> = ch.iter().map(|&i| to_cube[i].coords().to_vec()).collect();
        imgs.sort();
        for pair in ch.iter().zip(ch.iter().skip(1)) {
            let (a, b) = (&to_cube[*pair.0], &to_cube[*pair.1]);
            if !s_adjacent(a, b) {
                return Err(CoxError::CrossCheck(
                    "chamber image is not an s-clique".into(),
                ));
            }
        }
        image_chambers.insert(imgs);
    }
    let mut cube_chains: BTreeSet<Vec<Vec<i8>>> = BTreeSet::new();
    collect_maximal_chains(n, &mut cube_chains);
    if image_chambers != cube_chains {
        return Err(CoxError::CrossCheck(format!(
            "chambers ({}) do not match maximal s-chains ({})",
            image_chambers.len(),
            cube_chains.len()
        )));
    }
    Ok(DnSubdivision {
        n,
        vertices,
        chambers,
        to_cube,
    })
}

fn intern(
    ids: &mut BTreeMap<Vec<i64>, usize>,
    vertices: &mut Vec<DnVertex>,
    point: Vec<i64>,
    t: usize,
) -> usize {
    if let Some(&id) = ids.get(&point) {
        debug_assert_eq!(vertices[id].t, t, "type labels must be orbit-constant");
        return id;
    }
    let id = vertices.len();
    ids.insert(point.clone(), id);
    vertices.push(DnVertex { point, t });
    id
}

/// All maximal s-chains of the cube complex: pick a permutation giving the
/// order in which supports grow and a sign for each coordinate.
fn collect_maximal_chains(n: usize, out: &mut BTreeSet<Vec<Vec<i8>>>) {
    let mut order: Vec<usize> = (0..n).collect();
    permute_and_sign(&mut order, 0, &mut vec![0i8; n], n, out);
}

fn permute_and_sign(
    order: &mut Vec<usize>,
    k: usize,
    signs: &mut Vec<i8>,
    n: usize,
    out: &mut BTreeSet<Vec<Vec<i8>>>,
) {
    if k == n {
        for mask in 0..(1u32 << n) {
            let mut chain: Vec<Vec<i8>> = Vec::with_capacity(n);
            let mut current = vec![0i8; n];
            for (step, &coord) in order.iter().enumerate() {
                let _ = step;
                current[coord] = if mask & (1 << coord) != 0 { -1 } else { 1 };
                chain.push(current.clone());
            }
            chain.sort();
            out.insert(chain);
        }
        let _ = signs;
        return;
    }
    for i in k..n {
        order.swap(k, i);
        permute_and_sign(order, k + 1, signs, n, out);
        order.swap(k, i);
    }
}
