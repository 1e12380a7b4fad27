//! Finite metric balls in the braid-like groups and the coset complexes
//! they span.
//!
//! [`cayley_ball`] enumerates every element `g` with `−L ≤ inf(g)` and
//! `sup(g) ≤ L`, a generating-set-symmetric horizon that is closed under
//! inversion and connected under right multiplication by generators.
//!
//! [`deligne_ball`] refines a ball for the diagram `A(n)`: for each vertex
//! type `k` the ball is cut into connected components of the subgraph whose
//! edges are right multiplications by generators other than the `k`-th.
//! Each component plays the role of one standard-parabolic coset truncated
//! to the horizon, carries a sign pattern in `{−1,0,1}ⁿ` obtained by acting
//! on a base pattern in the finite quotient, and remembers how deep inside
//! the ball its members sit (its *margin*).  Midpoint vertices subdividing
//! the mixed-sign edges are inserted, and both the coset-intersection
//! (`u`) and subdivided (`s`) adjacency relations are computed from
//! in-ball witness elements.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde_json::json;

use super::coxtable::{CoxTable, Diagram};
use super::garside::BraidElement;
use super::ArtinError;
use crate::coxmodel::{self, CoxVertex};

const OUTSIDE: u32 = u32::MAX;

/// All elements `g` of a braid-like group with `−L ≤ inf(g)` and
/// `sup(g) ≤ L`, together with the generator-labeled steps between them.
pub struct CayleyBall {
    radius: i64,
    table: CoxTable,
    elements: Vec<BraidElement>,
    index: HashMap<BraidElement, u32>,
    cox_image: Vec<u32>,
    depth: Vec<i64>,
    /// Flat successor table: `step[(id·rank + s)·2 + dir]` is the id of
    /// `g·s^{±1}` (`dir` 0 positive, 1 negative) or `OUTSIDE`.
    step: Vec<u32>,
}

impl CayleyBall {
    pub fn diagram(&self) -> Diagram {
        self.table.diagram()
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn table(&self) -> &CoxTable {
        &self.table
    }

    /// Number of elements; ids run from 0 (the identity) to `len() − 1` in
    /// breadth-first discovery order.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: u32) -> &BraidElement {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, g: &BraidElement) -> Option<u32> {
        self.index.get(g).copied()
    }

    /// Image of the element in the finite quotient.
    pub fn cox_image(&self, id: u32) -> u32 {
        self.cox_image[id as usize]
    }

    /// Distance to the horizon: `min(L − sup, L + inf)`.  Every walk of at
    /// most `depth(id)` right multiplications by generators or their
    /// inverses stays inside the ball.
    pub fn depth(&self, id: u32) -> i64 {
        self.depth[id as usize]
    }

    /// The id of `element(id)·s^{±1}`, if that element is in the ball.
    pub fn step(&self, id: u32, s: usize, positive: bool) -> Option<u32> {
        let dir = usize::from(!positive);
        let t = self.step[(id as usize * self.table.rank() + s) * 2 + dir];
        (t != OUTSIDE).then_some(t)
    }

    /// Oriented, generator-labeled 1-skeleton in DOT format: one arc per
    /// in-ball step, so every geometric edge appears with both
    /// orientations.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cayley_ball {\n");
        for id in 0..self.len() as u32 {
            out.push_str(&format!(
                "  {} [label=\"{}\"];\n",
                id,
                self.table.braid_name(self.element(id))
            ));
        }
        for id in 0..self.len() as u32 {
            for s in 0..self.table.rank() {
                if let Some(t) = self.step(id, s, true) {
                    out.push_str(&format!("  {id} -> {t} [label=\"{}\"];\n", s + 1));
                }
                if let Some(t) = self.step(id, s, false) {
                    out.push_str(&format!("  {id} -> {t} [label=\"-{}\"];\n", s + 1));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first enumeration of the radius-`L` ball.  Element ids are the
/// discovery order, with successors explored by ascending generator and
/// positive before negative steps, so ids are deterministic.
pub fn cayley_ball(diagram: Diagram, radius: i64) -> Result<CayleyBall, ArtinError> {
    if radius < 1 {
        return Err(ArtinError::BadRadius(radius));
    }
    let table = CoxTable::build(diagram)?;
    let rank = table.rank();
    let inside = |g: &BraidElement| g.inf() >= -radius && g.sup() <= radius;

    let mut elements = vec![table.braid_identity()];
    let mut index = HashMap::new();
    index.insert(table.braid_identity(), 0u32);
    let mut step = Vec::new();
    let mut queue: VecDeque<u32> = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        debug_assert_eq!(step.len(), id as usize * rank * 2);
        for s in 0..rank {
            for positive in [true, false] {
                let h = table.braid_mul_gen(&elements[id as usize], s, positive);
                if !inside(&h) {
                    step.push(OUTSIDE);
                    continue;
                }
                let next = match index.get(&h) {
                    Some(&t) => t,
                    None => {
                        let t = elements.len() as u32;
                        elements.push(h.clone());
                        index.insert(h, t);
                        queue.push_back(t);
                        t
                    }
                };
                step.push(next);
            }
        }
    }
    let cox_image = elements.iter().map(|g| table.braid_projection(g)).collect();
    let depth = elements
        .iter()
        .map(|g| (radius - g.sup()).min(radius + g.inf()))
        .collect();
    Ok(CayleyBall {
        radius,
        table,
        elements,
        index,
        cox_image,
        depth,
        step,
    })
}

/// One vertex of the in-ball coset complex: either a *real* vertex (a
/// connected coset component of some type `k`) or a *fake* midpoint
/// subdividing a mixed-sign edge between two real vertices.
pub struct DeligneVertex {
    face: CoxVertex,
    coset_type: Option<usize>,
    endpoints: Option<(u32, u32)>,
    memberset: Vec<u32>,
    margin: i64,
}

impl DeligneVertex {
    /// Sign pattern in `{−1,0,1}ⁿ`.
    pub fn face(&self) -> &CoxVertex {
        &self.face
    }

    pub fn is_real(&self) -> bool {
        self.coset_type.is_some()
    }

    /// Coset type `k ∈ 1..=n` for real vertices.
    pub fn coset_type(&self) -> Option<usize> {
        self.coset_type
    }

    /// For a fake vertex, the ids of its non-negative and non-positive
    /// real endpoints, in that order.
    pub fn endpoints(&self) -> Option<(u32, u32)> {
        self.endpoints
    }

    /// Element ids witnessing this vertex, ascending.  For a real vertex
    /// these are the component members; for a fake vertex, the elements
    /// shared by both endpoint components.
    pub fn memberset(&self) -> &[u32] {
        &self.memberset
    }

    /// Largest element depth over the memberset: adjacency decided from a
    /// vertex of margin `m` is reliable up to `m` coset steps.
    pub fn margin(&self) -> i64 {
        self.margin
    }
}

/// In-ball coset complex for the diagram `A(n)`: real vertices grouped by
/// coset type, fake midpoints after them, with `u`- and `s`-adjacency.
pub struct DeligneBall {
    n: usize,
    ball: CayleyBall,
    vertices: Vec<DeligneVertex>,
    real_count: usize,
    /// `comp_of[k−1][element]` is the real vertex of type `k` whose coset
    /// component contains the element.
    comp_of: Vec<Vec<u32>>,
    fake_of_edge: BTreeMap<(u32, u32), u32>,
    u_adj: Vec<Vec<u32>>,
    s_adj: Vec<Vec<u32>>,
    s_type: Vec<usize>,
}

/// Base pattern of type `k`: `k−1` zeros followed by `n+1−k` ones.
fn base_pattern(n: usize, k: usize) -> CoxVertex {
    let mut coords = vec![0i8; n];
    for c in coords.iter_mut().skip(k - 1) {
        *c = 1;
    }
    CoxVertex::new(coords).expect("base pattern is nonzero")
}

/// Action of a finite-quotient element on a real pattern: extend by a
/// leading zero, permute the `n+1` coordinates, and renormalize so the
/// leading coordinate is zero again.
fn act(table: &CoxTable, w: u32, face: &CoxVertex) -> CoxVertex {
    let mut z: Vec<i64> = Vec::with_capacity(face.dim() + 1);
    z.push(0);
    z.extend(face.coords().iter().map(|&c| c as i64));
    let image = table.perm(w).apply(&z);
    let coords: Vec<i8> = image[1..]
        .iter()
        .map(|&c| {
            let y = c - image[0];
            debug_assert!((-1..=1).contains(&y), "real patterns stay in {{-1,0,1}}");
            y as i8
        })
        .collect();
    CoxVertex::new(coords).expect("orbit image is a nonzero pattern")
}

fn uf_find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Union keeping the smallest member as the root, so roots double as
/// canonical component names.
fn uf_union(parent: &mut [u32], a: u32, b: u32) {
    let ra = uf_find(parent, a);
    let rb = uf_find(parent, b);
    if ra < rb {
        parent[rb as usize] = ra;
    } else if rb < ra {
        parent[ra as usize] = rb;
    }
}

impl DeligneBall {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ball(&self) -> &CayleyBall {
        &self.ball
    }

    /// Total vertex count; ids `0..real_count()` are real (grouped by
    /// ascending coset type, then by smallest member), the rest fake.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn real_count(&self) -> usize {
        self.real_count
    }

    pub fn vertex(&self, v: u32) -> &DeligneVertex {
        &self.vertices[v as usize]
    }

    pub fn is_real(&self, v: u32) -> bool {
        self.vertices[v as usize].is_real()
    }

    pub fn face(&self, v: u32) -> &CoxVertex {
        &self.vertices[v as usize].face
    }

    pub fn margin(&self, v: u32) -> i64 {
        self.vertices[v as usize].margin
    }

    /// Number of nonzero pattern coordinates.
    pub fn s_type(&self, v: u32) -> usize {
        self.s_type[v as usize]
    }

    /// Level type of a real vertex: `n + 1 − k`.
    pub fn u_type(&self, v: u32) -> Option<usize> {
        self.vertices[v as usize].coset_type.map(|k| self.n + 1 - k)
    }

    /// The `n` real vertices whose coset components contain the element,
    /// by ascending coset type; their ids are strictly increasing.
    pub fn tuple(&self, element: u32) -> Vec<u32> {
        self.comp_of
            .iter()
            .map(|per_k| per_k[element as usize])
            .collect()
    }

    /// The fake midpoint of the edge between two real vertices, if any.
    pub fn find_fake(&self, a: u32, b: u32) -> Option<u32> {
        self.fake_of_edge
            .get(&(a.min(b), a.max(b)))
            .copied()
    }

    /// Real vertices sharing an in-ball element with this real vertex.
    pub fn u_neighbors(&self, v: u32) -> &[u32] {
        &self.u_adj[v as usize]
    }

    pub fn s_neighbors(&self, v: u32) -> &[u32] {
        &self.s_adj[v as usize]
    }

    pub fn u_adjacent(&self, a: u32, b: u32) -> bool {
        self.u_adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn s_adjacent(&self, a: u32, b: u32) -> bool {
        self.s_adj[a as usize].binary_search(&b).is_ok()
    }

    /// Strict subdivided order: adjacent with strictly smaller s-type (the
    /// supports of the smaller vertex nest inside the larger one's).
    pub fn s_lt(&self, a: u32, b: u32) -> bool {
        self.s_type[a as usize] < self.s_type[b as usize] && self.s_adjacent(a, b)
    }

    pub fn s_le(&self, a: u32, b: u32) -> bool {
        a == b || self.s_lt(a, b)
    }

    /// Coset-level order on real vertices: equal, or sharing an element
    /// with weakly smaller level type.
    pub fn u_le(&self, a: u32, b: u32) -> bool {
        a == b || (self.u_type(a) <= self.u_type(b) && self.u_adjacent(a, b))
    }

    /// Distribution of vertex margins.
    pub fn margin_histogram(&self) -> BTreeMap<i64, u64> {
        let mut hist = BTreeMap::new();
        for v in &self.vertices {
            *hist.entry(v.margin).or_insert(0) += 1;
        }
        hist
    }

    /// The vertex carrying a pattern within the identity apartment: the
    /// coset component of the shortest finite-quotient element mapping the
    /// base pattern onto the requested one (for a fake pattern, the
    /// midpoint of its two real parts).  `None` if the pattern does not
    /// belong to the model or the witness falls outside the ball.
    pub fn apartment_vertex(&self, face: &CoxVertex) -> Option<u32> {
        if face.dim() != self.n {
            return None;
        }
        if let Ok(u) = face.u_type() {
            let k = self.n + 1 - u;
            if !(1..=self.n).contains(&k) {
                return None;
            }
            let table = self.ball.table();
            let base = base_pattern(self.n, k);
            // Table ids are breadth-first, so the first match has minimal
            // length.
            let w = (0..table.size() as u32).find(|&w| act(table, w, &base) == *face)?;
            let id = self.ball.id_of(&table.braid_lift(w))?;
            Some(self.comp_of[k - 1][id as usize])
        } else {
            let (plus, minus) = coxmodel::plus_minus(face).ok()?;
            let a = self.apartment_vertex(&plus)?;
            let b = self.apartment_vertex(&minus)?;
            self.find_fake(a, b)
        }
    }

    /// Undirected 1-skeleton in DOT format: solid subdivided edges, dotted
    /// coset edges, boxes for real and diamonds for fake vertices.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph deligne_ball {\n");
        for v in 0..self.len() as u32 {
            let vx = self.vertex(v);
            let (shape, kind) = if let Some(k) = vx.coset_type {
                ("box", format!("k{k}"))
            } else {
                ("diamond", "fake".to_string())
            };
            out.push_str(&format!(
                "  {v} [shape={shape} label=\"{} {kind} m{}\"];\n",
                vx.face, vx.margin
            ));
        }
        for a in 0..self.len() as u32 {
            for &b in self.s_neighbors(a) {
                if a < b {
                    out.push_str(&format!("  {a} -- {b};\n"));
                }
            }
        }
        for a in 0..self.len() as u32 {
            for &b in self.u_neighbors(a) {
                if a < b && !self.s_adjacent(a, b) {
                    out.push_str(&format!("  {a} -- {b} [style=dotted];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Size and margin summary.
    pub fn summary_json(&self) -> serde_json::Value {
        let s_edges: usize = self.s_adj.iter().map(Vec::len).sum::<usize>() / 2;
        let u_edges: usize = self.u_adj.iter().map(Vec::len).sum::<usize>() / 2;
        let hist: BTreeMap<String, u64> = self
            .margin_histogram()
            .into_iter()
            .map(|(m, c)| (m.to_string(), c))
            .collect();
        json!({
            "diagram": self.ball.diagram().to_string(),
            "radius": self.ball.radius(),
            "elements": self.ball.len(),
            "real_vertices": self.real_count,
            "fake_vertices": self.len() - self.real_count,
            "u_edges": u_edges,
            "s_edges": s_edges,
            "margin_histogram": hist,
        })
    }
}

/// Builds the in-ball coset complex for `A(n)` at the given radius.
pub fn deligne_ball(n: usize, radius: i64) -> Result<DeligneBall, ArtinError> {
    if !(1..=3).contains(&n) {
        return Err(ArtinError::BadRank(n));
    }
    let ball = cayley_ball(Diagram::A(n), radius)?;
    let size = ball.len();

    // Real vertices: connected components of the "all generators except
    // s_k" step subgraphs.  Positive steps suffice because an in-ball
    // inverse step g → g·s⁻¹ is the reverse of the in-ball positive step
    // g·s⁻¹ → g.
    let mut vertices: Vec<DeligneVertex> = Vec::new();
    let mut comp_of: Vec<Vec<u32>> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut parent: Vec<u32> = (0..size as u32).collect();
        for g in 0..size as u32 {
            for s in (0..n).filter(|&s| s != k - 1) {
                if let Some(h) = ball.step(g, s, true) {
                    uf_union(&mut parent, g, h);
                }
            }
        }
        let base = base_pattern(n, k);
        let mut vertex_of_root = vec![OUTSIDE; size];
        let mut per_k = vec![OUTSIDE; size];
        for g in 0..size as u32 {
            let root = uf_find(&mut parent, g);
            if vertex_of_root[root as usize] == OUTSIDE {
                debug_assert_eq!(root, g, "roots are component minima");
                let face = act(ball.table(), ball.cox_image(g), &base);
                debug_assert_eq!(
                    face.u_type().ok(),
                    Some(n + 1 - k),
                    "orbit level type is determined by the coset type"
                );
                vertex_of_root[root as usize] = vertices.len() as u32;
                vertices.push(DeligneVertex {
                    face,
                    coset_type: Some(k),
                    endpoints: None,
                    memberset: Vec::new(),
                    margin: i64::MIN,
                });
            }
            let v = vertex_of_root[root as usize];
            debug_assert_eq!(
                vertices[v as usize].face,
                act(ball.table(), ball.cox_image(g), &base),
                "every member of a component induces the same pattern"
            );
            per_k[g as usize] = v;
            let vx = &mut vertices[v as usize];
            vx.memberset.push(g);
            vx.margin = vx.margin.max(ball.depth(g));
        }
        comp_of.push(per_k);
    }
    let real_count = vertices.len();

    // Coset edges: two real vertices are adjacent exactly when some
    // element lies in both components, i.e. they appear together in an
    // element's type tuple.
    let mut u_pairs: Vec<(u32, u32)> = Vec::with_capacity(size * n * (n - 1) / 2);
    for g in 0..size {
        for i in 0..n {
            for j in i + 1..n {
                u_pairs.push((comp_of[i][g], comp_of[j][g]));
            }
        }
    }
    u_pairs.sort_unstable();
    u_pairs.dedup();

    // Fake vertices: one midpoint per mixed-sign coset edge with disjoint
    // supports, ordered by the edge they subdivide.
    let mut fake_of_edge: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for &(a, b) in &u_pairs {
        let fa = &vertices[a as usize].face;
        let fb = &vertices[b as usize].face;
        if fa.is_non_negative() == fb.is_non_negative() {
            continue;
        }
        let (adjacent, midpoint) =
            coxmodel::u_adjacent(fa, fb).expect("component patterns are real");
        if !adjacent {
            // Overlapping supports; the edge audit reports these.
            continue;
        }
        let face = midpoint.expect("mixed adjacent patterns have a midpoint");
        let (plus, minus) = if fa.is_non_negative() { (a, b) } else { (b, a) };
        fake_of_edge.insert((a, b), vertices.len() as u32);
        vertices.push(DeligneVertex {
            face,
            coset_type: None,
            endpoints: Some((plus, minus)),
            memberset: Vec::new(),
            margin: i64::MIN,
        });
    }

    // Fake membersets: the elements shared by both endpoint components.
    for g in 0..size as u32 {
        for i in 0..n {
            for j in i + 1..n {
                let key = (comp_of[i][g as usize], comp_of[j][g as usize]);
                if let Some(&f) = fake_of_edge.get(&key) {
                    let vx = &mut vertices[f as usize];
                    vx.memberset.push(g);
                    vx.margin = vx.margin.max(ball.depth(g));
                }
            }
        }
    }

    let s_type: Vec<usize> = vertices.iter().map(|v| v.face.s_type()).collect();
    let pos_mask: Vec<u32> = vertices
        .iter()
        .map(|v| {
            v.face
                .coords()
                .iter()
                .enumerate()
                .fold(0u32, |m, (i, &c)| if c > 0 { m | (1 << i) } else { m })
        })
        .collect();
    let neg_mask: Vec<u32> = vertices
        .iter()
        .map(|v| {
            v.face
                .coords()
                .iter()
                .enumerate()
                .fold(0u32, |m, (i, &c)| if c < 0 { m | (1 << i) } else { m })
        })
        .collect();
    let nested = |a: u32, b: u32| -> bool {
        let (pa, na) = (pos_mask[a as usize], neg_mask[a as usize]);
        let (pb, nb) = (pos_mask[b as usize], neg_mask[b as usize]);
        (pa & pb == pa && na & nb == na) || (pb & pa == pb && nb & na == nb)
    };

    // Subdivided edges: nested pairs sharing a witness element.  Every
    // such pair appears in the star of some element — the witness itself —
    // which contains the element's type tuple and the fakes whose
    // endpoints both lie in the tuple.
    let mut s_pairs: Vec<(u32, u32)> = Vec::new();
    let mut star: Vec<u32> = Vec::with_capacity(n + n * (n - 1) / 2);
    for g in 0..size {
        star.clear();
        for per_k in &comp_of {
            star.push(per_k[g]);
        }
        for i in 0..n {
            for j in i + 1..n {
                if let Some(&f) = fake_of_edge.get(&(star[i], star[j])) {
                    star.push(f);
                }
            }
        }
        for i in 0..star.len() {
            for j in i + 1..star.len() {
                let (a, b) = (star[i], star[j]);
                if nested(a, b) {
                    s_pairs.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    s_pairs.sort_unstable();
    s_pairs.dedup();

    // Scanning sorted pairs keeps every adjacency list sorted: a vertex
    // first collects its smaller neighbors (ascending), then its larger
    // ones (ascending).
    let mut u_adj = vec![Vec::new(); vertices.len()];
    for &(a, b) in &u_pairs {
        u_adj[a as usize].push(b);
        u_adj[b as usize].push(a);
    }
    let mut s_adj = vec![Vec::new(); vertices.len()];
    for &(a, b) in &s_pairs {
        s_adj[a as usize].push(b);
        s_adj[b as usize].push(a);
    }

    Ok(DeligneBall {
        n,
        ball,
        vertices,
        real_count,
        comp_of,
        fake_of_edge,
        u_adj,
        s_adj,
        s_type,
    })
}
