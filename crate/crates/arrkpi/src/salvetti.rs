//! The oriented cell complex dual to a hyperplane arrangement.
//!
//! Cells are pairs `[F, v]` of a fan `F` and a chamber `v` above it; the
//! dimension of `[F, v]` is the codimension of `F`. Chambers give vertices,
//! each codimension-1 fan gives a *pair* of oppositely oriented edges, and a
//! codimension-2 fan gives one polygonal 2-cell per chamber around it, whose
//! attaching walk reads off an alternating-word relation. The boundary of
//! `[F, v]` consists of the cells `[G, gate(v, G)]` for the covers `G` of
//! `F`, and every standard subcomplex (cells whose fan lies above a fixed
//! `F`) is the image of a gate-driven cellular retraction.
//!
//! For the reflection arrangement of a finite Coxeter group the low
//! dimensions match `|W|` copies of the presentation complex of the
//! associated Artin-style presentation ([`artin_presentation`]).

use crate::arrangement::{ArrError, FanComplex, FanId};
use crate::coxmodel::CoxeterMatrix;
use crate::exactgeom::signs_to_string;
use serde::Serialize;
use std::collections::BTreeMap;

/// Index of a cell inside a [`SalvettiComplex`].
pub type CellId = usize;

/// One oriented cell `[fan, chamber]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SalvettiCell {
    /// The fan this cell projects to under the forgetful map.
    pub fan: FanId,
    /// The distinguished chamber above the fan.
    pub chamber: FanId,
    /// Cell dimension = codimension of the fan.
    pub dim: usize,
    /// Cells one dimension lower: `[G, gate(chamber, G)]` over covers `G`.
    pub boundary: Vec<CellId>,
}

/// The oriented dual complex of an arrangement's fan poset.
#[derive(Clone, Debug)]
pub struct SalvettiComplex {
    fans: FanComplex,
    cells: Vec<SalvettiCell>,
    index: BTreeMap<(FanId, FanId), CellId>,
}

/// Builds the oriented dual complex of the given fan poset.
pub fn salvetti_complex(fc: &FanComplex) -> SalvettiComplex {
    let ambient = fc.arrangement().dim();
    let mut raw: Vec<(FanId, FanId)> = Vec::new();
    for f in 0..fc.len() {
        for v in fc.chamber_set(f) {
            raw.push((f, v));
        }
    }
    // Deterministic order: by dimension, then fan covector, then chamber.
    raw.sort_by_key(|&(f, v)| (ambient - fc.fan(f).dim, f, v));
    let index: BTreeMap<(FanId, FanId), CellId> = raw
        .iter()
        .enumerate()
        .map(|(i, &fv)| (fv, i))
        .collect();
    let cells = raw
        .iter()
        .map(|&(f, v)| {
            let mut boundary: Vec<CellId> = fc
                .covers_of(f)
                .into_iter()
                .map(|g| index[&(g, fc.gate(v, g))])
                .collect();
            boundary.sort_unstable();
            SalvettiCell {
                fan: f,
                chamber: v,
                dim: ambient - fc.fan(f).dim,
                boundary,
            }
        })
        .collect();
    SalvettiComplex {
        fans: fc.clone(),
        cells,
        index,
    }
}

impl SalvettiComplex {
    pub fn fan_complex(&self) -> &FanComplex {
        &self.fans
    }

    pub fn cells(&self) -> &[SalvettiCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, c: CellId) -> &SalvettiCell {
        &self.cells[c]
    }

    pub fn cell_id(&self, fan: FanId, chamber: FanId) -> Option<CellId> {
        self.index.get(&(fan, chamber)).copied()
    }

    /// Number of cells in each dimension `0 ..= ambient`.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.fans.arrangement().dim() + 1];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1i64 } else { -1 })
            .sum()
    }

    /// The forgetful map onto the fan poset.
    pub fn fan_of(&self, c: CellId) -> FanId {
        self.cells[c].fan
    }

    /// Tail and head vertex cells of an edge: the edge `[F, v]` runs from
    /// the vertex of `v` to the vertex of the opposite chamber of `F`.
    pub fn edge_endpoints(&self, c: CellId) -> Option<(CellId, CellId)> {
        let cell = &self.cells[c];
        if cell.dim != 1 {
            return None;
        }
        let above = self.fans.chamber_set(cell.fan);
        debug_assert_eq!(above.len(), 2, "codimension-1 fans have two chambers");
        let other = if above[0] == cell.chamber {
            above[1]
        } else {
            above[0]
        };
        Some((
            self.index[&(cell.chamber, cell.chamber)],
            self.index[&(other, other)],
        ))
    }

    /// The cyclic walk of chambers around a 2-cell, starting at the cell's
    /// own chamber and turning first towards the smaller-indexed neighbor.
    pub fn chamber_cycle(&self, c: CellId) -> Option<Vec<FanId>> {
        let cell = &self.cells[c];
        if cell.dim != 2 {
            return None;
        }
        let ring = self.fans.chamber_set(cell.fan);
        let neighbors = |x: FanId| -> Vec<FanId> {
            ring.iter()
                .copied()
                .filter(|&y| y != x && self.fans.separation(x, y) == 1)
                .collect()
        };
        let mut cycle = vec![cell.chamber];
        let first = neighbors(cell.chamber);
        debug_assert_eq!(first.len(), 2, "chambers around a 2-cell form a cycle");
        let mut prev = cell.chamber;
        let mut cur = *first.iter().min().expect("two neighbors");
        while cur != cell.chamber {
            cycle.push(cur);
            let ns = neighbors(cur);
            debug_assert_eq!(ns.len(), 2, "chambers around a 2-cell form a cycle");
            let next = if ns[0] == prev { ns[1] } else { ns[0] };
            prev = cur;
            cur = next;
        }
        debug_assert_eq!(cycle.len(), ring.len(), "walk must visit every chamber");
        Some(cycle)
    }

    /// The attaching walk of a 2-cell as oriented edge cells: for each
    /// consecutive chamber pair the unique edge between them, flagged `true`
    /// when the walk traverses it along its own orientation.
    pub fn walk_edges(&self, c: CellId) -> Option<Vec<(CellId, bool)>> {
        let cell_chamber = self.cells[c].chamber;
        let cycle = self.chamber_cycle(c)?;
        let m = cycle.len();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let (a, b) = (cycle[i], cycle[(i + 1) % m]);
            let g = self.separating_wall(a, b);
            // The boundary edge over this wall is the one gated from the
            // 2-cell's own chamber; the walk runs against its orientation
            // on the far half of the cycle.
            let gate = self.fans.gate(cell_chamber, g);
            let forward = gate == a;
            let edge = self.index[&(g, gate)];
            out.push((edge, forward));
        }
        Some(out)
    }

    /// The codimension-1 fan between two adjacent chambers.
    fn separating_wall(&self, a: FanId, b: FanId) -> FanId {
        let ca = &self.fans.fan(a).covector;
        let cb = &self.fans.fan(b).covector;
        let wall: Vec<_> = ca
            .iter()
            .zip(cb)
            .map(|(&x, &y)| if x == y { x } else { crate::exactgeom::Sign::Zero })
            .collect();
        self.fans
            .find(&wall)
            .expect("adjacent chambers share a wall fan")
    }

    /// All cells `[G, w]` with `G` above `f` in the face order, sorted.
    pub fn standard_subcomplex(&self, f: FanId) -> Vec<CellId> {
        let mut out: Vec<CellId> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| self.fans.le(f, c.fan))
            .map(|(i, _)| i)
            .collect();
        out.sort_unstable();
        out
    }

    /// The retraction onto the standard subcomplex of `f`: the cell `[E, v]`
    /// maps to `[Π_f(E), gate(v, Π_f(E))]`.
    pub fn retract_cell(&self, f: FanId, c: CellId) -> CellId {
        let cell = &self.cells[c];
        let projected = self.fans.project_face(cell.fan, f);
        let gate = self.fans.gate(cell.chamber, projected);
        self.index[&(projected, gate)]
    }

    /// Verifies, over every fan pair `(f, e)`, that retracting the standard
    /// subcomplex of `e` onto the one of `f` lands exactly on the standard
    /// subcomplex of the projected fan, that the retraction never raises
    /// cell dimension (it is cellular), and that it commutes with the
    /// forgetful map. Returns the first violation as an error string.
    pub fn check_retraction_property(&self) -> Result<(), String> {
        for f in 0..self.fans.len() {
            // Cellularity and commutation over every cell at once.
            for (c, cell) in self.cells.iter().enumerate() {
                let r = self.retract_cell(f, c);
                if self.cells[r].dim > cell.dim {
                    return Err(format!(
                        "retraction onto fan {f} raises dimension at cell {c}"
                    ));
                }
                if self.cells[r].fan != self.fans.project_face(cell.fan, f) {
                    return Err(format!(
                        "retraction onto fan {f} does not commute with the fan projection at cell {c}"
                    ));
                }
            }
            for e in 0..self.fans.len() {
                let image: std::collections::BTreeSet<CellId> = self
                    .standard_subcomplex(e)
                    .into_iter()
                    .map(|c| self.retract_cell(f, c))
                    .collect();
                let expected: std::collections::BTreeSet<CellId> = self
                    .standard_subcomplex(self.fans.project_face(e, f))
                    .into_iter()
                    .collect();
                if image != expected {
                    return Err(format!(
                        "image of subcomplex of fan {e} under retraction onto fan {f} \
                         has {} cells, expected {}",
                        image.len(),
                        expected.len()
                    ));
                }
            }
        }
        Ok(())
    }

    /// Verifies that edges come in oppositely oriented pairs: each
    /// codimension-1 fan carries exactly two edge cells, running between the
    /// same two vertices in opposite directions.
    pub fn check_edge_doubling(&self) -> Result<(), String> {
        let mut by_fan: BTreeMap<FanId, Vec<CellId>> = BTreeMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            if c.dim == 1 {
                by_fan.entry(c.fan).or_default().push(i);
            }
        }
        for (f, edges) in &by_fan {
            if edges.len() != 2 {
                return Err(format!("fan {f} carries {} edges, expected 2", edges.len()));
            }
            let a = self.edge_endpoints(edges[0]).expect("edge");
            let b = self.edge_endpoints(edges[1]).expect("edge");
            if a != (b.1, b.0) {
                return Err(format!("edges over fan {f} are not opposite"));
            }
        }
        Ok(())
    }

    /// The oriented 1-skeleton in DOT format; vertices are named by their
    /// chamber sign vectors.
    pub fn to_dot_one_skeleton(&self) -> String {
        let name = |v: FanId| signs_to_string(&self.fans.fan(v).covector);
        let mut out = String::from("digraph one_skeleton {\n");
        for c in &self.cells {
            if c.dim == 0 {
                out.push_str(&format!("  \"{}\";\n", name(c.chamber)));
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.dim == 1 {
                let (tail, head) = self.edge_endpoints(i).expect("edge");
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                    name(self.cells[tail].chamber),
                    name(self.cells[head].chamber),
                    signs_to_string(&self.fans.fan(c.fan).covector),
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    /// The cell poset as JSON: one record per cell with its dimension, fan
    /// and chamber sign vectors, and boundary cell ids.
    pub fn to_json_cells(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                serde_json::json!({
                    "id": i,
                    "dim": c.dim,
                    "fan": signs_to_string(&self.fans.fan(c.fan).covector),
                    "chamber": signs_to_string(&self.fans.fan(c.chamber).covector),
                    "boundary": c.boundary,
                })
            })
            .collect();
        serde_json::json!({
            "dim": self.fans.arrangement().dim(),
            "cell_counts": self.cell_counts(),
            "cells": cells,
        })
    }
}

/// Convenience: the oriented dual complex straight from an arrangement.
pub fn salvetti_of(arr: &crate::arrangement::Arrangement) -> Result<SalvettiComplex, ArrError> {
    Ok(salvetti_complex(&crate::arrangement::enumerate_fans(arr)?))
}

/// A group presentation with generators and word equalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinPresentation {
    pub generators: Vec<String>,
    /// Pairs of equal words, as sequences of generator indices.
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

/// The standard presentation attached to a Coxeter matrix: one generator
/// per row and, for each pair `i < j` with bond `m`, the relation equating
/// the two alternating words of length `m` (so `m = 2` is a commutation).
pub fn artin_presentation(cm: &CoxeterMatrix) -> ArtinPresentation {
    let n = cm.rank();
    let generators = (1..=n).map(|i| format!("s{i}")).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = cm.order(i, j);
            let alt = |a: usize, b: usize| -> Vec<usize> {
                (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect()
            };
            relations.push((alt(i, j), alt(j, i)));
        }
    }
    ArtinPresentation {
        generators,
        relations,
    }
}
