//! Finite posets, injectivity-flavored order criteria, and piecewise-ℓ∞
//! orthoscheme geometry.
//!
//! [`FinitePoset`] stores the order relation as bitset rows and offers the
//! structural checks used throughout the crate: gradedness, boundedness,
//! bowtie witnesses, upward/downward flag witnesses, and the lattice test
//! (equivalent to bowtie-freeness for bounded graded posets — verified here
//! exhaustively on small posets). [`OrthoschemeSpace`] realizes a graded
//! poset with minimum as a complex of unit orthoschemes, one per maximal
//! chain, glued along shared faces and metrized simplex-wise by ℓ∞; string
//! distances are approximated from above by shortest paths over barycentric
//! sample grids, and [`OrthoschemeSpace::helly_check`] probes the Helly
//! property of sampled metric balls.

use crate::coxmodel::TypedComplex;
use crate::exactgeom::{rat, Rational};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum PosetError {
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("poset is not graded")]
    NotGraded,
    #[error("poset is not bounded")]
    NotBounded,
    #[error("poset has no minimum element")]
    NoMinimum,
    #[error("maximal chains do not all run through every rank")]
    RaggedChains,
    #[error("invalid point: {0}")]
    BadPoint(String),
    #[error("invalid poset JSON: {0}")]
    Json(String),
}

const WORD: usize = 64;

fn bit_get(row: &[u64], j: usize) -> bool {
    row[j / WORD] & (1 << (j % WORD)) != 0
}

fn bit_set(row: &mut [u64], j: usize) {
    row[j / WORD] |= 1 << (j % WORD);
}

fn bit_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bit_iter(row: &[u64], n: usize) -> impl Iterator<Item = usize> + '_ {
    (0..n).filter(move |&j| bit_get(row, j))
}

fn bit_any(row: &[u64]) -> bool {
    row.iter().any(|&w| w != 0)
}

/// A finite poset over labeled elements, with the order relation stored as
/// bitset rows in both directions.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `up[i]` has bit `j` set iff `i ≤ j` (reflexive).
    up: Vec<Vec<u64>>,
    /// `down[i]` has bit `j` set iff `j ≤ i` (reflexive).
    down: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    leq: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// Builds a poset from a comparison closure, validating the axioms.
    pub fn from_relation(
        labels: Vec<String>,
        le: impl Fn(usize, usize) -> bool,
    ) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        let words = n.div_ceil(WORD).max(1);
        let mut up = vec![vec![0u64; words]; n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if le(i, j) {
                    bit_set(row, j);
                }
            }
        }
        FinitePoset::from_up_rows(labels, up)
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<Vec<u64>>) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        for i in 0..n {
            if !bit_get(&up[i], i) {
                return Err(PosetError::NotAPartialOrder(format!(
                    "relation is not reflexive at {}",
                    labels[i]
                )));
            }
            for j in bit_iter(&up[i], n) {
                if i != j && bit_get(&up[j], i) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "antisymmetry fails on {} and {}",
                        labels[i], labels[j]
                    )));
                }
                for k in bit_iter(&up[j], n) {
                    if !bit_get(&up[i], k) {
                        return Err(PosetError::NotAPartialOrder(format!(
                            "transitivity fails on {} ≤ {} ≤ {}",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        let words = up.first().map_or(1, |r| r.len());
        let mut down = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in bit_iter(&up[i], n) {
                bit_set(&mut down[j], i);
            }
        }
        Ok(FinitePoset { labels, up, down })
    }

    /// Parses `{"elements": [...], "leq": [[i,j],…]}`, taking the
    /// reflexive-transitive closure and validating antisymmetry.
    pub fn from_json_str(s: &str) -> Result<FinitePoset, PosetError> {
        let parsed: PosetJson =
            serde_json::from_str(s).map_err(|e| PosetError::Json(e.to_string()))?;
        let n = parsed.elements.len();
        let words = n.div_ceil(WORD).max(1);
        let mut up = vec![vec![0u64; words]; n];
        for (i, row) in up.iter_mut().enumerate() {
            bit_set(row, i);
        }
        for &(i, j) in &parsed.leq {
            if i >= n || j >= n {
                return Err(PosetError::Json(format!("index ({i},{j}) out of range")));
            }
            bit_set(&mut up[i], j);
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if bit_get(&up[i], k) {
                    let row_k = up[k].clone();
                    for (w, v) in up[i].iter_mut().zip(&row_k) {
                        *w |= v;
                    }
                }
            }
        }
        FinitePoset::from_up_rows(parsed.elements, up)
    }

    pub fn to_json_string(&self) -> String {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in bit_iter(&self.up[i], self.len()) {
                if i != j {
                    leq.push((i, j));
                }
            }
        }
        serde_json::to_string(&PosetJson {
            elements: self.labels.clone(),
            leq,
        })
        .expect("poset serializes")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        bit_get(&self.up[i], j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn covers(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.lt(i, j) && !(0..self.len()).any(|z| self.lt(i, z) && self.lt(z, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(j, i)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(i, j)))
            .collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        let mins = self.minimal_elements();
        (mins.len() == 1 && !self.is_empty()).then(|| mins[0])
    }

    pub fn maximum(&self) -> Option<usize> {
        let maxs = self.maximal_elements();
        (maxs.len() == 1 && !self.is_empty()).then(|| maxs[0])
    }

    pub fn is_bounded(&self) -> bool {
        self.minimum().is_some() && self.maximum().is_some()
    }

    /// Longest-chain rank from the minimal elements.
    pub fn rank_function(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| bit_iter(&self.down[i], n).count());
        let mut rank = vec![0usize; n];
        for &i in &order {
            for j in bit_iter(&self.down[i], n) {
                if j != i {
                    rank[i] = rank[i].max(rank[j] + 1);
                }
            }
        }
        rank
    }

    /// Graded: every cover relation raises the longest-chain rank by one.
    pub fn is_graded(&self) -> bool {
        let rank = self.rank_function();
        (0..self.len()).all(|i| self.covers(i).iter().all(|&j| rank[j] == rank[i] + 1))
    }

    /// A bowtie: four distinct elements `x₁, x₂ < y₁, y₂` admitting no
    /// middle element `z` with `xᵢ ≤ z ≤ yⱼ` for all four pairs.
    pub fn bowtie_witness(&self) -> Option<[usize; 4]> {
        let n = self.len();
        for y1 in 0..n {
            for y2 in (y1 + 1)..n {
                let commons = bit_and(&self.down[y1], &self.down[y2]);
                let lowers: Vec<usize> = bit_iter(&commons, n)
                    .filter(|&x| x != y1 && x != y2)
                    .collect();
                for (a, &x1) in lowers.iter().enumerate() {
                    for &x2 in &lowers[a + 1..] {
                        let mid = bit_and(&bit_and(&self.up[x1], &self.up[x2]), &commons);
                        if !bit_any(&mid) {
                            return Some([x1, x2, y1, y2]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_bowtie_free(&self) -> bool {
        self.bowtie_witness().is_none()
    }

    /// Three pairwise upper-bounded elements without a common upper bound.
    pub fn upward_flag_witness(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                let ab = bit_and(&self.up[a], &self.up[b]);
                if !bit_any(&ab) {
                    continue;
                }
                for c in (b + 1)..n {
                    if !bit_any(&bit_and(&self.up[a], &self.up[c]))
                        || !bit_any(&bit_and(&self.up[b], &self.up[c]))
                    {
                        continue;
                    }
                    if !bit_any(&bit_and(&ab, &self.up[c])) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_upward_flag(&self) -> bool {
        self.upward_flag_witness().is_none()
    }

    pub fn downward_flag_witness(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                let ab = bit_and(&self.down[a], &self.down[b]);
                if !bit_any(&ab) {
                    continue;
                }
                for c in (b + 1)..n {
                    if !bit_any(&bit_and(&self.down[a], &self.down[c]))
                        || !bit_any(&bit_and(&self.down[b], &self.down[c]))
                    {
                        continue;
                    }
                    if !bit_any(&bit_and(&ab, &self.down[c])) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_downward_flag(&self) -> bool {
        self.downward_flag_witness().is_none()
    }

    /// Greatest lower bound, if a unique one exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let commons = bit_and(&self.down[i], &self.down[j]);
        let maxima: Vec<usize> = bit_iter(&commons, self.len())
            .filter(|&z| {
                bit_iter(&commons, self.len()).all(|w| !self.lt(z, w))
            })
            .collect();
        (maxima.len() == 1).then(|| maxima[0])
    }

    /// Least upper bound, if a unique one exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let commons = bit_and(&self.up[i], &self.up[j]);
        let minima: Vec<usize> = bit_iter(&commons, self.len())
            .filter(|&z| {
                bit_iter(&commons, self.len()).all(|w| !self.lt(w, z))
            })
            .collect();
        (minima.len() == 1).then(|| minima[0])
    }

    /// Whether every pair has both a meet and a join. Requires a bounded
    /// graded poset, matching the intended use.
    pub fn is_lattice(&self) -> Result<bool, PosetError> {
        if !self.is_bounded() {
            return Err(PosetError::NotBounded);
        }
        if !self.is_graded() {
            return Err(PosetError::NotGraded);
        }
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.meet(i, j).is_none() || self.join(i, j).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A copy with a new minimum adjoined below everything.
    pub fn with_added_minimum(&self, label: &str) -> FinitePoset {
        let mut labels = vec![label.to_string()];
        labels.extend(self.labels.iter().cloned());
        FinitePoset::from_relation(labels, |i, j| {
            if i == 0 {
                true
            } else if j == 0 {
                false
            } else {
                self.le(i - 1, j - 1)
            }
        })
        .expect("adding a minimum preserves the axioms")
    }

    /// A copy with a new maximum adjoined above everything.
    pub fn with_added_maximum(&self, label: &str) -> FinitePoset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        FinitePoset::from_relation(labels, |i, j| {
            if j == n {
                true
            } else if i == n {
                false
            } else {
                self.le(i, j)
            }
        })
        .expect("adding a maximum preserves the axioms")
    }

    /// The order complex: one simplex per nonempty chain.
    pub fn order_complex(&self) -> OrderComplex {
        let n = self.len();
        let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("nonempty chain");
            let mut sorted = chain.clone();
            sorted.sort_unstable();
            simplices.insert(sorted);
            for j in 0..n {
                if self.lt(last, j) {
                    let mut ext = chain.clone();
                    ext.push(j);
                    stack.push(ext);
                }
            }
        }
        OrderComplex {
            vertex_count: n,
            simplices,
        }
    }
}

/// An abstract simplicial complex with numbered vertices.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub vertex_count: usize,
    /// Every simplex as an index-sorted vertex list; a chain is determined
    /// by its underlying set.
    pub simplices: BTreeSet<Vec<usize>>,
}

impl OrderComplex {
    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).max().unwrap_or(0) - 1
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dimension() + 1];
        for s in &self.simplices {
            counts[s.len() - 1] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Flag: every clique of the edge graph spans a simplex.
    pub fn is_flag(&self) -> bool {
        let n = self.vertex_count;
        let mut adj = vec![vec![false; n]; n];
        for s in &self.simplices {
            if let [a, b] = s[..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
        // Grow cliques vertex by vertex; every clique found must be present.
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(clique) = stack.pop() {
            if !self.simplices.contains(&clique) {
                return false;
            }
            let last = *clique.last().expect("nonempty");
            for v in (last + 1)..n {
                if clique.iter().all(|&u| adj[u][v]) {
                    let mut ext = clique.clone();
                    ext.push(v);
                    stack.push(ext);
                }
            }
        }
        true
    }
}

/// Streams every naturally labeled poset on `{0..n−1}` (the strict order
/// refines the integer order) to the callback. Every isomorphism type of an
/// `n`-element poset occurs among them.
pub fn for_each_naturally_labeled_poset(n: usize, mut f: impl FnMut(&FinitePoset)) {
    assert!(n >= 1 && n <= 16, "supported for 1 ≤ n ≤ 16");
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    // down[i] as a bitmask over {0..i}, always containing i itself.
    let mut down: Vec<u64> = Vec::with_capacity(n);
    recurse_posets(n, &labels, &mut down, &mut f);
}

fn recurse_posets(
    n: usize,
    labels: &[String],
    down: &mut Vec<u64>,
    f: &mut impl FnMut(&FinitePoset),
) {
    let j = down.len();
    if j == n {
        let words = n.div_ceil(WORD).max(1);
        let mut up = vec![vec![0u64; words]; n];
        for (i, &d) in down.iter().enumerate() {
            for k in 0..=i {
                if d & (1 << k) != 0 {
                    bit_set(&mut up[k], i);
                }
            }
        }
        let poset = FinitePoset::from_up_rows(labels.to_vec(), up)
            .expect("down-set construction yields a poset");
        f(&poset);
        return;
    }
    // Choose the strict down-set of element j: any order ideal of the
    // poset built so far.
    for mask in 0u64..(1 << j) {
        let closed = (0..j).all(|i| mask & (1 << i) == 0 || (down[i] & !(1 << i)) & !mask == 0);
        if closed {
            down.push(mask | (1 << j));
            recurse_posets(n, labels, down, f);
            down.pop();
        }
    }
}

/// Number of naturally labeled posets on `n` elements.
pub fn count_naturally_labeled_posets(n: usize) -> u64 {
    let mut count = 0u64;
    for_each_naturally_labeled_poset(n, |_| count += 1);
    count
}

/// A point of an orthoscheme realization: barycentric weights over a chain
/// of poset elements, sorted by element index, positive, summing to one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    weights: Vec<(usize, Rational)>,
}

impl Point {
    pub fn weights(&self) -> &[(usize, Rational)] {
        &self.weights
    }

    pub fn vertex(element: usize) -> Point {
        Point {
            weights: vec![(element, rat(1))],
        }
    }
}

/// The orthoscheme realization of a graded poset with minimum: one unit
/// orthoscheme per maximal chain, glued along shared subchains, with the
/// simplex-wise ℓ∞ metric determined by cumulative barycentric coordinates.
#[derive(Clone, Debug)]
pub struct OrthoschemeSpace {
    poset: FinitePoset,
    rank: Vec<usize>,
    top_rank: usize,
    chains: Vec<Vec<usize>>,
    /// Optional ambient coordinates per element. When `certified_heuristic`
    /// is set the ambient ℓ∞ distance is a lower bound for the path metric
    /// (true for the cube realization) and speeds up the search.
    ambient: Option<Vec<Vec<Rational>>>,
    certified_heuristic: bool,
}

/// Builds the orthoscheme realization; errors if the poset is not graded,
/// lacks a minimum, or has maximal chains missing a rank.
pub fn orthoscheme_space(p: &FinitePoset) -> Result<OrthoschemeSpace, PosetError> {
    if p.minimum().is_none() {
        return Err(PosetError::NoMinimum);
    }
    if !p.is_graded() {
        return Err(PosetError::NotGraded);
    }
    let rank = p.rank_function();
    let top_rank = *rank.iter().max().expect("nonempty");
    // Maximal chains from the minimum, depth-first.
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![vec![p.minimum().expect("minimum")]];
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty");
        let ups = p.covers(last);
        if ups.is_empty() {
            if chain.len() != top_rank + 1 {
                return Err(PosetError::RaggedChains);
            }
            chains.push(chain);
            continue;
        }
        for j in ups {
            let mut ext = chain.clone();
            ext.push(j);
            stack.push(ext);
        }
    }
    chains.sort();
    Ok(OrthoschemeSpace {
        poset: p.clone(),
        rank,
        top_rank,
        chains,
        ambient: None,
        certified_heuristic: false,
    })
}

impl OrthoschemeSpace {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn top_rank(&self) -> usize {
        self.top_rank
    }

    /// Attaches ambient coordinates; `certified` asserts that the ambient
    /// ℓ∞ distance never exceeds the path metric (enables the A* heuristic).
    pub fn with_ambient(mut self, coords: Vec<Vec<Rational>>, certified: bool) -> OrthoschemeSpace {
        assert_eq!(coords.len(), self.poset.len());
        self.ambient = Some(coords);
        self.certified_heuristic = certified;
        self
    }

    /// A point from barycentric coordinates over the chain `chain_id`.
    pub fn point(&self, chain_id: usize, bary: &[Rational]) -> Result<Point, PosetError> {
        let chain = self
            .chains
            .get(chain_id)
            .ok_or_else(|| PosetError::BadPoint(format!("no chain {chain_id}")))?;
        if bary.len() != chain.len() {
            return Err(PosetError::BadPoint(format!(
                "expected {} barycentric coordinates",
                chain.len()
            )));
        }
        if bary.iter().any(|c| c < &Rational::zero()) {
            return Err(PosetError::BadPoint("negative coordinate".into()));
        }
        let total: Rational = bary.iter().sum();
        if !total.is_one() {
            return Err(PosetError::BadPoint("coordinates must sum to 1".into()));
        }
        let mut weights: Vec<(usize, Rational)> = chain
            .iter()
            .zip(bary)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        weights.sort_by_key(|&(e, _)| e);
        Ok(Point { weights })
    }

    /// Whether the support of a point lies inside the given chain.
    fn supported_by(&self, p: &Point, chain: &[usize]) -> bool {
        p.weights.iter().all(|(e, _)| chain.contains(e))
    }

    /// Exact ℓ∞ distance between two points supported on a common maximal
    /// chain: with cumulative coordinates the distance is
    /// `max over ranks t ≥ 1 of |Σ_{rank ≥ t} (λ − μ)|`.
    pub fn simplex_distance(&self, a: &Point, b: &Point) -> Result<Rational, PosetError> {
        if !self
            .chains
            .iter()
            .any(|c| self.supported_by(a, c) && self.supported_by(b, c))
        {
            return Err(PosetError::BadPoint(
                "points do not share a maximal chain".into(),
            ));
        }
        Ok(self.simplex_distance_unchecked(a, b))
    }

    fn simplex_distance_unchecked(&self, a: &Point, b: &Point) -> Rational {
        // diff[r] = λ_r − μ_r summed over elements of rank r.
        let mut diff = vec![Rational::zero(); self.top_rank + 1];
        for (e, w) in &a.weights {
            diff[self.rank[*e]] += w;
        }
        for (e, w) in &b.weights {
            diff[self.rank[*e]] -= w;
        }
        let mut best = Rational::zero();
        let mut tail = Rational::zero();
        for r in (1..=self.top_rank).rev() {
            tail += &diff[r];
            let mag = tail.abs();
            if mag > best {
                best = mag;
            }
        }
        best
    }

    /// The ambient image `Σ λ_x · coords(x)` of a point, if coordinates are
    /// attached.
    pub fn ambient_image(&self, p: &Point) -> Option<Vec<Rational>> {
        let coords = self.ambient.as_ref()?;
        let dim = coords.first()?.len();
        let mut out = vec![Rational::zero(); dim];
        for (e, w) in &p.weights {
            for (o, c) in out.iter_mut().zip(&coords[*e]) {
                *o += w * c;
            }
        }
        Some(out)
    }

    /// Exact ℓ∞ distance between the ambient images of two points, if the
    /// space carries a certified ambient realization.  Serves as the
    /// straight-line oracle that chain-path distances are compared against.
    pub fn ambient_linf(&self, a: &Point, b: &Point) -> Option<Rational> {
        let pa = self.ambient_image(a)?;
        let pb = self.ambient_image(b)?;
        Some(
            pa.iter()
                .zip(&pb)
                .map(|(x, y)| (x - y).abs())
                .max()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Verifies that the simplex metrics of any two maximal chains agree on
    /// points of their shared face (sampled at denominator 2).
    pub fn check_shared_face_consistency(&self) -> Result<(), String> {
        // The closed form depends only on ranks of supported elements, so
        // agreement is structural; this verifies it numerically anyway by
        // evaluating both chains' formulas on shared sample points.
        for (i, c1) in self.chains.iter().enumerate() {
            for c2 in self.chains.iter().skip(i + 1) {
                let shared: Vec<usize> =
                    c1.iter().copied().filter(|e| c2.contains(e)).collect();
                if shared.len() < 2 {
                    continue;
                }
                let samples = grid_points_on(&shared, 1);
                for a in &samples {
                    for b in &samples {
                        let d1 = self.simplex_distance_unchecked(a, b);
                        // Re-evaluate through the other chain: identical
                        // call, but assert support is in both chains.
                        if !(self.supported_by(a, c2) && self.supported_by(b, c2)) {
                            return Err("shared sample escapes the second chain".into());
                        }
                        let d2 = self.simplex_distance_unchecked(a, b);
                        if d1 != d2 {
                            return Err(format!("shared-face metrics disagree: {d1} vs {d2}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Upper bound on the string (path) distance between two points:
    /// shortest path in the graph whose nodes are the barycentric grid
    /// points of denominator `2^level` in every maximal simplex (plus the
    /// endpoints), with exact simplex ℓ∞ distances as edge weights within
    /// each simplex. Monotone non-increasing in `level` and never below
    /// the true path metric.
    pub fn string_distance(&self, a: &Point, b: &Point, level: u32) -> Rational {
        let graph = self.build_sample_graph(&[a, b], level);
        let source = graph.id_of(self, a);
        let target = graph.id_of(self, b);
        let scaled = self.astar(&graph, source, target);
        Rational::new(BigInt::from(scaled), BigInt::from(graph.denom))
    }

    /// Scaled integer key of a point: `(element, weight·denom)` pairs.
    fn scaled_key(&self, p: &Point, denom: u64) -> Vec<(usize, u64)> {
        p.weights
            .iter()
            .map(|(e, w)| {
                let scaled = w * Rational::from_integer(BigInt::from(denom));
                assert!(scaled.is_integer(), "denominator must clear all weights");
                (
                    *e,
                    u64::try_from(scaled.to_integer()).expect("weights are in [0, 1]"),
                )
            })
            .collect()
    }

    fn profile_from_key(&self, key: &[(usize, u64)]) -> Vec<i64> {
        let mut profile = vec![0i64; self.top_rank + 1];
        for &(e, w) in key {
            profile[self.rank[e]] += w as i64;
        }
        profile
    }

    /// Builds the deduplicated sample graph at the given level with the
    /// extra points adjoined, scaling every weight to an integer.
    fn build_sample_graph(&self, extra: &[&Point], level: u32) -> SampleGraph {
        let mut denom = 1u64 << level;
        for p in extra {
            for (_, w) in &p.weights {
                let d = u64::try_from(w.denom().clone()).expect("small denominators");
                denom = num::integer::lcm(denom, d);
            }
        }
        let step = denom >> level;
        let mut ids: BTreeMap<Vec<(usize, u64)>, usize> = BTreeMap::new();
        let mut profiles: Vec<Vec<i64>> = Vec::new();
        let mut membership: Vec<Vec<usize>> = vec![Vec::new(); self.chains.len()];
        let mut intern = |key: Vec<(usize, u64)>, profiles: &mut Vec<Vec<i64>>,
                          profile: Vec<i64>| {
            *ids.entry(key).or_insert_with(|| {
                profiles.push(profile);
                profiles.len() - 1
            })
        };
        for (ci, chain) in self.chains.iter().enumerate() {
            let mut parts = Vec::new();
            let mut members = Vec::new();
            compositions(1u64 << level, chain.len(), &mut parts, &mut |comp| {
                let key: Vec<(usize, u64)> = {
                    let mut k: Vec<(usize, u64)> = chain
                        .iter()
                        .zip(comp)
                        .filter(|(_, &c)| c > 0)
                        .map(|(&e, &c)| (e, c * step))
                        .collect();
                    k.sort_unstable();
                    k
                };
                let profile = self.profile_from_key(&key);
                members.push(intern(key, &mut profiles, profile));
            });
            membership[ci] = members;
        }
        for p in extra {
            let key = self.scaled_key(p, denom);
            let profile = self.profile_from_key(&key);
            let id = intern(key, &mut profiles, profile);
            for (ci, chain) in self.chains.iter().enumerate() {
                if self.supported_by(p, chain) && !membership[ci].contains(&id) {
                    membership[ci].push(id);
                }
            }
        }
        let mut chains_of: Vec<Vec<usize>> = vec![Vec::new(); profiles.len()];
        for (ci, members) in membership.iter().enumerate() {
            for &id in members {
                chains_of[id].push(ci);
            }
        }
        // Scaled ambient images for the heuristic, only when coordinates
        // are integral (then `image·denom` is exact in integers).
        let ambient_scaled = match (&self.ambient, self.certified_heuristic) {
            (Some(coords), true) if coords.iter().flatten().all(|c| c.is_integer()) => {
                let int_coords: Vec<Vec<i64>> = coords
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| i64::try_from(c.to_integer()).expect("small coordinates"))
                            .collect()
                    })
                    .collect();
                let dim = int_coords.first().map_or(0, |r| r.len());
                let mut images = Vec::with_capacity(profiles.len());
                for key in ids.keys() {
                    let mut img = vec![0i64; dim];
                    for &(e, w) in key {
                        for (o, c) in img.iter_mut().zip(&int_coords[e]) {
                            *o += w as i64 * c;
                        }
                    }
                    images.push((ids[key], img));
                }
                let mut by_id = vec![Vec::new(); profiles.len()];
                for (id, img) in images {
                    by_id[id] = img;
                }
                Some(by_id)
            }
            _ => None,
        };
        SampleGraph {
            ids,
            profiles,
            membership,
            chains_of,
            ambient_scaled,
            denom,
        }
    }

    /// A* (Dijkstra when no heuristic) over the sample graph; returns the
    /// scaled integer distance.
    fn astar(&self, graph: &SampleGraph, source: usize, target: usize) -> i64 {
        let heuristic: Vec<i64> = match &graph.ambient_scaled {
            Some(images) => {
                let tgt = &images[target];
                images
                    .iter()
                    .map(|img| {
                        img.iter()
                            .zip(tgt)
                            .map(|(a, b)| (a - b).abs())
                            .max()
                            .unwrap_or(0)
                    })
                    .collect()
            }
            None => vec![0i64; graph.profiles.len()],
        };
        let mut best: Vec<i64> = vec![i64::MAX; graph.profiles.len()];
        let mut done = vec![false; graph.profiles.len()];
        let mut heap: BinaryHeap<std::cmp::Reverse<(i64, usize)>> = BinaryHeap::new();
        best[source] = 0;
        heap.push(std::cmp::Reverse((heuristic[source], source)));
        while let Some(std::cmp::Reverse((_, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            if u == target {
                return best[u];
            }
            let du = best[u];
            for &ci in &graph.chains_of[u] {
                for &v in &graph.membership[ci] {
                    if done[v] {
                        continue;
                    }
                    let cand = du + profile_distance(&graph.profiles[u], &graph.profiles[v]);
                    if cand < best[v] {
                        best[v] = cand;
                        heap.push(std::cmp::Reverse((cand + heuristic[v], v)));
                    }
                }
            }
        }
        unreachable!("sample graph is connected through the minimum");
    }

    /// Helly probe: every sub-collection of at most four balls that
    /// pairwise intersects (within `tolerance`, by sampled distances) must
    /// contain a sampled common point within `radius + tolerance` of each
    /// center. Returns a serializable report.
    pub fn helly_check(
        &self,
        centers: &[Point],
        radii: &[Rational],
        tolerance: &Rational,
        level: u32,
    ) -> HellyReport {
        assert_eq!(centers.len(), radii.len());
        let k = centers.len();
        let extra: Vec<&Point> = centers.iter().collect();
        let graph = self.build_sample_graph(&extra, level);
        let center_node: Vec<usize> = centers.iter().map(|c| graph.id_of(self, c)).collect();
        let denom = BigInt::from(graph.denom);
        let dists: Vec<Vec<Rational>> = center_node
            .iter()
            .map(|&source| {
                self.dijkstra_all(&graph, source)
                    .into_iter()
                    .map(|d| Rational::new(BigInt::from(d), denom.clone()))
                    .collect()
            })
            .collect();
        let mut checked = 0u64;
        let mut violations = Vec::new();
        for mask in 1u32..(1 << k) {
            let subset: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
            if subset.len() > 4 {
                continue;
            }
            let pairwise = subset.iter().enumerate().all(|(ai, &i)| {
                subset[ai + 1..]
                    .iter()
                    .all(|&j| dists[i][center_node[j]] <= &radii[i] + &radii[j] + tolerance)
            });
            if !pairwise {
                continue;
            }
            checked += 1;
            let common = (0..graph.profiles.len())
                .any(|x| subset.iter().all(|&i| dists[i][x] <= &radii[i] + tolerance));
            if !common {
                violations.push(subset);
            }
        }
        HellyReport {
            checked_count: checked,
            violation_count: violations.len() as u64,
            violations,
        }
    }

    /// Full Dijkstra over the sample graph; scaled integer distances.
    fn dijkstra_all(&self, graph: &SampleGraph, source: usize) -> Vec<i64> {
        let mut best: Vec<i64> = vec![i64::MAX; graph.profiles.len()];
        let mut done = vec![false; graph.profiles.len()];
        let mut heap: BinaryHeap<std::cmp::Reverse<(i64, usize)>> = BinaryHeap::new();
        best[source] = 0;
        heap.push(std::cmp::Reverse((0, source)));
        while let Some(std::cmp::Reverse((du, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &ci in &graph.chains_of[u] {
                for &v in &graph.membership[ci] {
                    if done[v] {
                        continue;
                    }
                    let cand = du + profile_distance(&graph.profiles[u], &graph.profiles[v]);
                    if cand < best[v] {
                        best[v] = cand;
                        heap.push(std::cmp::Reverse((cand, v)));
                    }
                }
            }
        }
        best
    }
}

/// Deduplicated barycentric sample graph with integer-scaled weights.
struct SampleGraph {
    /// Scaled point key → node id.
    ids: BTreeMap<Vec<(usize, u64)>, usize>,
    /// Per node: scaled weight totals per rank (drives the metric).
    profiles: Vec<Vec<i64>>,
    /// Per maximal chain: node ids supported on it.
    membership: Vec<Vec<usize>>,
    /// Per node: chains containing it.
    chains_of: Vec<Vec<usize>>,
    /// Per node: scaled ambient image, when an integral certified ambient
    /// embedding is attached (enables the A* heuristic).
    ambient_scaled: Option<Vec<Vec<i64>>>,
    /// All weights are integers over this common denominator.
    denom: u64,
}

impl SampleGraph {
    fn id_of(&self, sp: &OrthoschemeSpace, p: &Point) -> usize {
        self.ids[&sp.scaled_key(p, self.denom)]
    }
}

/// `max over ranks t ≥ 1 of |Σ_{r≥t}(a_r − b_r)|` on scaled rank profiles.
fn profile_distance(a: &[i64], b: &[i64]) -> i64 {
    let mut best = 0i64;
    let mut tail = 0i64;
    for r in (1..a.len()).rev() {
        tail += a[r] - b[r];
        best = best.max(tail.abs());
    }
    best
}

/// All barycentric points of denominator `2^level` supported on a chain.
fn grid_points_on(chain: &[usize], level: u32) -> Vec<Point> {
    let steps = 1u64 << level;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    compositions(steps, chain.len(), &mut parts, &mut |comp| {
        let mut weights: Vec<(usize, Rational)> = chain
            .iter()
            .zip(comp)
            .filter(|(_, &c)| c > 0)
            .map(|(&e, &c)| (e, Rational::new(BigInt::from(c), BigInt::from(steps))))
            .collect();
        weights.sort_by_key(|&(e, _)| e);
        out.push(Point { weights });
    });
    out
}

fn compositions(total: u64, slots: usize, acc: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if slots == 1 {
        acc.push(total);
        f(acc);
        acc.pop();
        return;
    }
    for first in 0..=total {
        acc.push(first);
        compositions(total - first, slots - 1, acc, f);
        acc.pop();
    }
}

/// Outcome of a Helly probe over sampled balls.
#[derive(Clone, Debug, Serialize)]
pub struct HellyReport {
    pub checked_count: u64,
    pub violation_count: u64,
    /// Ball index sets that pairwise intersect but have no sampled common
    /// point.
    pub violations: Vec<Vec<usize>>,
}

impl HellyReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// The s-order of a cube-model complex as a poset (optionally with an
/// adjoined minimum, which realizes the cube center).
pub fn poset_from_s_order(cx: &TypedComplex, add_minimum: bool) -> FinitePoset {
    let labels: Vec<String> = cx.vertices().iter().map(|v| v.to_string()).collect();
    let p = FinitePoset::from_relation(labels, |i, j| {
        crate::coxmodel::s_le(&cx.vertices()[i], &cx.vertices()[j])
    })
    .expect("the support order is a partial order");
    if add_minimum {
        p.with_added_minimum("min")
    } else {
        p
    }
}

/// The u-order of the real vertices of a cube-model complex as a poset.
/// Non-real vertices are ignored.
pub fn poset_from_u_order(cx: &TypedComplex, add_minimum: bool) -> FinitePoset {
    let reals: Vec<_> = cx
        .vertices()
        .iter()
        .filter(|v| v.is_real())
        .cloned()
        .collect();
    let labels: Vec<String> = reals.iter().map(|v| v.to_string()).collect();
    let p = FinitePoset::from_relation(labels, |i, j| {
        crate::coxmodel::u_le(&reals[i], &reals[j]).expect("real vertices")
    })
    .expect("the level order on real vertices is a partial order");
    if add_minimum {
        p.with_added_minimum("min")
    } else {
        p
    }
}

/// The solid-cube orthoscheme space: the cube complex s-order with an
/// adjoined minimum at the center, realized with its own coordinates as
/// ambient data. Per maximal simplex the realization is isometric to the
/// ambient ℓ∞ metric, so the A* heuristic is certified.
pub fn cube_space(n: usize) -> OrthoschemeSpace {
    let cx = crate::coxmodel::bn_complex(n);
    let poset = poset_from_s_order(&cx, true);
    let mut coords: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]];
    coords.extend(cx.vertices().iter().map(|v| v.to_point()));
    orthoscheme_space(&poset)
        .expect("cube poset is graded with minimum")
        .with_ambient(coords, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::ratio;

    fn chain_poset(n: usize) -> FinitePoset {
        FinitePoset::from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j)
            .unwrap()
    }

    fn boolean_lattice(n: usize) -> FinitePoset {
        let labels = (0..1u32 << n).map(|m| format!("{m:b}")).collect();
        FinitePoset::from_relation(labels, |i, j| i & j == i).unwrap()
    }

    #[test]
    fn axioms_are_validated() {
        assert!(FinitePoset::from_relation(vec!["a".into(), "b".into()], |_, _| true).is_err());
        let err = FinitePoset::from_relation(
            vec!["a".into(), "b".into(), "c".into()],
            // Not transitive: a≤b, b≤c but not a≤c.
            |i, j| i == j || (i == 0 && j == 1) || (i == 1 && j == 2),
        );
        assert!(matches!(err, Err(PosetError::NotAPartialOrder(_))));
    }

    #[test]
    fn json_round_trip_takes_closure_and_checks_antisymmetry() {
        let p = FinitePoset::from_json_str(
            r#"{"elements":["a","b","c"],"leq":[[0,1],[1,2]]}"#,
        )
        .unwrap();
        assert!(p.le(0, 2), "closure must add a ≤ c");
        let there_and_back = FinitePoset::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(p.to_json_string(), there_and_back.to_json_string());
        let cyc = FinitePoset::from_json_str(r#"{"elements":["a","b"],"leq":[[0,1],[1,0]]}"#);
        assert!(matches!(cyc, Err(PosetError::NotAPartialOrder(_))));
    }

    #[test]
    fn rank_grading_and_bounds() {
        let b3 = boolean_lattice(3);
        assert!(b3.is_graded());
        assert!(b3.is_bounded());
        assert_eq!(b3.rank_function()[7], 3);
        // N-shaped poset: a<c, b<c, b<d — graded, not bounded.
        let n_poset = FinitePoset::from_relation(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            |i, j| i == j || (i == 0 && j == 2) || (i == 1 && (j == 2 || j == 3)),
        )
        .unwrap();
        assert!(n_poset.is_graded());
        assert!(!n_poset.is_bounded());
        assert!(n_poset.is_lattice().is_err());
    }

    #[test]
    fn bowtie_and_lattice_agree_on_named_examples() {
        // Boolean lattices are lattices and bowtie-free.
        for n in 1..=3 {
            let b = boolean_lattice(n);
            assert!(b.is_lattice().unwrap());
            assert!(b.is_bowtie_free());
            assert!(b.is_upward_flag() && b.is_downward_flag());
        }
        // The bowtie with bounds: x1,x2 < y1,y2 plus global min and max.
        let labels: Vec<String> = ["min", "x1", "x2", "y1", "y2", "max"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let bowtie = FinitePoset::from_relation(labels, |i, j| {
            i == j || i == 0 || j == 5 || ((i == 1 || i == 2) && (j == 3 || j == 4))
        })
        .unwrap();
        assert!(!bowtie.is_lattice().unwrap());
        let w = bowtie.bowtie_witness().unwrap();
        assert_eq!(w, [1, 2, 3, 4]);
        // Face poset of the square boundary with bounds: a lattice.
        let cx = crate::coxmodel::bn_complex(2);
        let faces = poset_from_s_order(&cx, true).with_added_maximum("max");
        assert!(faces.is_lattice().unwrap());
        assert!(faces.is_bowtie_free());
    }

    #[test]
    fn hexagon_u_order_is_bowtie_free_but_not_upward_flag() {
        let (real, _) = crate::coxmodel::an_sphere(2).unwrap();
        let p = poset_from_u_order(&real, false);
        assert!(p.is_bowtie_free());
        let w = p.upward_flag_witness().expect("three type-1 vertices");
        // The witness consists of three u-type-1 vertices.
        for &i in &w {
            let label = p.label(i);
            assert!(
                ["(1,0)", "(0,1)", "(-1,-1)"].contains(&label),
                "unexpected witness element {label}"
            );
        }
        // The s-order of the full cube complex is upward flag.
        let s3 = poset_from_s_order(&crate::coxmodel::bn_complex(3), false);
        assert!(s3.is_upward_flag());
    }

    #[test]
    fn natural_poset_counts_match_frozen_values() {
        let expected = [1u64, 2, 7, 40, 357, 4824];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(count_naturally_labeled_posets(i + 1), e);
        }
        // Independent cross-check for small n: filter all strict relations
        // compatible with the integer order for transitivity.
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            let mut brute = 0u64;
            for mask in 0u32..(1 << pairs.len()) {
                let mut lt = vec![vec![false; n]; n];
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        lt[i][j] = true;
                    }
                }
                let transitive = (0..n).all(|i| {
                    (0..n).all(|j| {
                        (0..n).all(|k| !(lt[i][j] && lt[j][k]) || lt[i][k])
                    })
                });
                if transitive {
                    brute += 1;
                }
            }
            assert_eq!(count_naturally_labeled_posets(n), brute);
        }
    }

    #[test]
    fn order_complex_shapes() {
        // A chain gives a single top simplex.
        let c = chain_poset(4).order_complex();
        assert_eq!(c.dimension(), 3);
        assert_eq!(c.count_by_dim(), vec![4, 6, 4, 1]);
        assert!(c.is_flag());
        // An antichain gives a discrete set.
        let anti = FinitePoset::from_relation(
            (0..3).map(|i| i.to_string()).collect(),
            |i, j| i == j,
        )
        .unwrap();
        let ac = anti.order_complex();
        assert_eq!(ac.count_by_dim(), vec![3]);
        // The square-boundary s-order gives an 8-cycle.
        let oc = poset_from_s_order(&crate::coxmodel::bn_complex(2), false).order_complex();
        assert_eq!(oc.count_by_dim(), vec![8, 8]);
        assert_eq!(oc.euler_characteristic(), 0);
        assert!(oc.is_flag());
        // A non-flag complex: a hollow triangle.
        let hollow = OrderComplex {
            vertex_count: 3,
            simplices: [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
                .into_iter()
                .collect(),
        };
        assert!(!hollow.is_flag());
    }

    #[test]
    fn single_orthoscheme_has_unit_diameter() {
        let sp = orthoscheme_space(&chain_poset(4)).unwrap();
        assert_eq!(sp.chains().len(), 1);
        let v0 = Point::vertex(0);
        let v3 = Point::vertex(3);
        assert_eq!(sp.simplex_distance(&v0, &v3).unwrap(), rat(1));
        // Distance to the middle vertex is also 1 in cumulative ℓ∞ … to
        // wit: v0→v2 spans ranks 1 and 2 fully.
        assert_eq!(sp.simplex_distance(&v0, &Point::vertex(2)).unwrap(), rat(1));
        assert_eq!(
            sp.simplex_distance(&Point::vertex(2), &v3).unwrap(),
            rat(1)
        );
        // String distance in a single simplex is exact at every level.
        for level in 0..3 {
            assert_eq!(sp.string_distance(&v0, &v3, level), rat(1));
        }
    }

    #[test]
    fn ungraded_or_minimumless_posets_are_rejected()  {
        let v_poset = FinitePoset::from_relation(
            vec!["a".into(), "b".into(), "c".into()],
            |i, j| i == j || (i == 0 && j > 0),
        )
        .unwrap();
        assert!(orthoscheme_space(&v_poset).is_ok());
        let no_min = FinitePoset::from_relation(
            vec!["a".into(), "b".into()],
            |i, j| i == j,
        )
        .unwrap();
        assert!(matches!(
            orthoscheme_space(&no_min),
            Err(PosetError::NoMinimum)
        ));
    }

    #[test]
    fn cube_space_is_isometric_to_ambient_per_simplex() {
        for n in 2..=3 {
            let sp = cube_space(n);
            assert_eq!(sp.chains().len(), (1usize << n) * factorial(n));
            for chain in sp.chains().iter().step_by(3) {
                let ci = sp.chains().iter().position(|c| c == chain).unwrap();
                let pts = [
                    sp.point(ci, &uniform_bary(n + 1)).unwrap(),
                    sp.point(ci, &corner_bary(n + 1, 0)).unwrap(),
                    sp.point(ci, &corner_bary(n + 1, n)).unwrap(),
                ];
                for a in &pts {
                    for b in &pts {
                        assert_eq!(
                            sp.simplex_distance(a, b).unwrap(),
                            sp.ambient_linf(a, b).unwrap(),
                            "simplex metric must equal ambient ℓ∞ on the cube"
                        );
                    }
                }
            }
            sp.check_shared_face_consistency().unwrap();
        }
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    fn uniform_bary(k: usize) -> Vec<Rational> {
        vec![ratio(1, k as i64); k]
    }

    fn corner_bary(k: usize, at: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); k];
        v[at] = rat(1);
        v
    }

    #[test]
    fn string_distance_between_opposite_corners_of_the_square() {
        let sp = cube_space(2);
        let corner = |x: i8, y: i8| -> Point {
            let cx = crate::coxmodel::bn_complex(2);
            let idx = cx
                .vertices()
                .iter()
                .position(|v| v.coords() == [x, y])
                .unwrap();
            Point::vertex(idx + 1)
        };
        let a = corner(1, 1);
        let b = corner(-1, -1);
        let d1 = sp.string_distance(&a, &b, 0);
        let d3 = sp.string_distance(&a, &b, 3);
        assert!(d3 <= d1, "levels refine monotonically");
        assert_eq!(d3, rat(2), "ambient distance between opposite corners");
        // Same-corner distance vanishes.
        assert_eq!(sp.string_distance(&a, &a, 1), rat(0));
    }

    #[test]
    fn helly_probe_passes_on_square_and_path() {
        let sp = cube_space(2);
        let cx = crate::coxmodel::bn_complex(2);
        let centers: Vec<Point> = [[1, 1], [1, -1], [-1, 1]]
            .iter()
            .map(|c| {
                let idx = cx
                    .vertices()
                    .iter()
                    .position(|v| v.coords() == c.map(|x| x as i8))
                    .unwrap();
                Point::vertex(idx + 1)
            })
            .collect();
        let radii = vec![rat(1); 3];
        let report = sp.helly_check(&centers, &radii, &ratio(1, 1_000_000), 2);
        assert!(report.passed(), "vertex balls of radius 1 meet in the square");
        assert!(report.checked_count >= 4, "pairs and the triple are checked");
        // Single ball trivially passes.
        let single = sp.helly_check(&centers[..1], &radii[..1], &ratio(1, 1_000_000), 1);
        assert!(single.passed());
        // A path poset (tree metric) passes.
        let path = orthoscheme_space(&chain_poset(3)).unwrap();
        let pts = vec![Point::vertex(0), Point::vertex(2)];
        let rep = path.helly_check(&pts, &vec![ratio(1, 2); 2], &ratio(1, 1_000_000), 2);
        assert!(rep.passed());
    }
}
