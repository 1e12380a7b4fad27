//! Multiplication, length, and descent tables for small finite Coxeter
//! groups, realized as (signed) coordinate permutations.
//!
//! The tables are the combinatorial backbone of the Garside engine: simple
//! elements of the braid-like groups are in bijection with group elements
//! here, and the left-greedy factorization only ever consults descent sets
//! and products, all of which are precomputed by [`CoxTable::build`].

use std::collections::BTreeMap;

use serde::Serialize;

use super::ArtinError;
use crate::coxmodel::{CoxeterMatrix, SignedPerm};

/// Identifier of a supported diagram: a path (`A`), a path with one double
/// bond at the end (`B`), or a path with a fork (`D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Diagram {
    A(usize),
    B(usize),
    D(usize),
}

impl Diagram {
    /// Number of generators.
    pub fn rank(&self) -> usize {
        match *self {
            Diagram::A(n) | Diagram::B(n) | Diagram::D(n) => n,
        }
    }

    /// Checks that the diagram is one this crate supports: `A1`–`A3`,
    /// `B2`–`B3`, `D3`.
    pub fn validate(&self) -> Result<(), ArtinError> {
        let ok = match *self {
            Diagram::A(n) => (1..=3).contains(&n),
            Diagram::B(n) => (2..=3).contains(&n),
            Diagram::D(n) => n == 3,
        };
        if ok {
            Ok(())
        } else {
            Err(ArtinError::UnsupportedDiagram(self.to_string()))
        }
    }

    /// Parses names such as `"A2"`, `"b3"`, `"D3"`.
    pub fn parse(text: &str) -> Result<Diagram, ArtinError> {
        let bad = || ArtinError::UnsupportedDiagram(text.to_string());
        let mut chars = text.chars();
        let family = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let d = match family {
            'A' | 'a' => Diagram::A(n),
            'B' | 'b' => Diagram::B(n),
            'D' | 'd' => Diagram::D(n),
            _ => return Err(bad()),
        };
        d.validate()?;
        Ok(d)
    }

    /// The bond matrix of the diagram.
    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        match *self {
            Diagram::A(n) => CoxeterMatrix::a(n),
            Diagram::B(n) => CoxeterMatrix::b(n),
            Diagram::D(n) => CoxeterMatrix::d(n),
        }
    }

    /// Order of the finite group the diagram presents.
    pub fn group_order(&self) -> usize {
        fn fact(n: usize) -> usize {
            (1..=n).product()
        }
        match *self {
            Diagram::A(n) => fact(n + 1),
            Diagram::B(n) => (1 << n) * fact(n),
            Diagram::D(n) => (1 << (n - 1)) * fact(n),
        }
    }

    /// The standard generators as signed coordinate permutations.
    ///
    /// * `A(n)` acts on `n + 1` coordinates by the adjacent swaps
    ///   `(0 1), (1 2), …, (n−1 n)`.
    /// * `B(n)` acts on `n` coordinates by the adjacent swaps followed by the
    ///   sign flip of the last coordinate.
    /// * `D(3)` acts on `3` coordinates by two adjacent swaps and the negated
    ///   swap of the last two coordinates.
    fn generator_perms(&self) -> Vec<SignedPerm> {
        match *self {
            Diagram::A(n) => (0..n)
                .map(|i| SignedPerm::transposition(n + 1, i, i + 1))
                .collect(),
            Diagram::B(n) => {
                let mut gens: Vec<SignedPerm> = (0..n - 1)
                    .map(|i| SignedPerm::transposition(n, i, i + 1))
                    .collect();
                gens.push(SignedPerm::flip(n, n - 1));
                gens
            }
            Diagram::D(n) => {
                let mut gens: Vec<SignedPerm> = (0..n - 1)
                    .map(|i| SignedPerm::transposition(n, i, i + 1))
                    .collect();
                gens.push(SignedPerm::negated_swap(n, n - 2, n - 1));
                gens
            }
        }
    }
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Diagram::A(n) => write!(f, "A{n}"),
            Diagram::B(n) => write!(f, "B{n}"),
            Diagram::D(n) => write!(f, "D{n}"),
        }
    }
}

/// Precomputed tables of a finite Coxeter group: multiplication, inverses,
/// lengths, descent sets, one reduced word per element, the longest element,
/// and conjugation by the longest element.
///
/// Element `0` is always the identity; elements are indexed in breadth-first
/// order from the identity, so indices are sorted by length first.
#[derive(Debug, Clone)]
pub struct CoxTable {
    diagram: Diagram,
    rank: usize,
    perms: Vec<SignedPerm>,
    right: Vec<u32>,
    left: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    length: Vec<u32>,
    rdesc: Vec<u32>,
    ldesc: Vec<u32>,
    word: Vec<Vec<u8>>,
    w0: u32,
    tau: Vec<u32>,
}

impl CoxTable {
    /// Builds the tables for a supported diagram by closing the generating
    /// permutations under multiplication.
    pub fn build(diagram: Diagram) -> Result<CoxTable, ArtinError> {
        diagram.validate()?;
        let gens = diagram.generator_perms();
        let rank = gens.len();
        let identity = SignedPerm::identity(gens[0].n());

        let mut perms = vec![identity.clone()];
        let mut index: BTreeMap<SignedPerm, u32> = BTreeMap::new();
        index.insert(identity, 0);
        let mut word: Vec<Vec<u8>> = vec![Vec::new()];
        let mut length: Vec<u32> = vec![0];

        let mut head = 0usize;
        while head < perms.len() {
            let g = perms[head].clone();
            for (s, sp) in gens.iter().enumerate() {
                let h = g.compose(sp);
                if !index.contains_key(&h) {
                    let id = perms.len() as u32;
                    index.insert(h.clone(), id);
                    perms.push(h);
                    let mut w = word[head].clone();
                    w.push(s as u8);
                    word.push(w);
                    length.push(length[head] + 1);
                }
            }
            head += 1;
        }

        let size = perms.len();
        if size != diagram.group_order() {
            return Err(ArtinError::TableConstruction(format!(
                "{diagram}: closure produced {size} elements, expected {}",
                diagram.group_order()
            )));
        }

        let mut right = vec![0u32; size * rank];
        let mut left = vec![0u32; size * rank];
        for g in 0..size {
            for (s, sp) in gens.iter().enumerate() {
                right[g * rank + s] = index[&perms[g].compose(sp)];
                left[g * rank + s] = index[&sp.compose(&perms[g])];
            }
        }

        let mut mul = vec![0u32; size * size];
        for g in 0..size {
            for h in 0..size {
                mul[g * size + h] = index[&perms[g].compose(&perms[h])];
            }
        }

        let inv: Vec<u32> = perms.iter().map(|p| index[&p.inverse()]).collect();

        let mut rdesc = vec![0u32; size];
        let mut ldesc = vec![0u32; size];
        for g in 0..size {
            for s in 0..rank {
                if length[right[g * rank + s] as usize] < length[g] {
                    rdesc[g] |= 1 << s;
                }
                if length[left[g * rank + s] as usize] < length[g] {
                    ldesc[g] |= 1 << s;
                }
            }
        }

        let max_len = *length.iter().max().expect("group is nonempty");
        let longest: Vec<u32> = (0..size as u32)
            .filter(|&g| length[g as usize] == max_len)
            .collect();
        if longest.len() != 1 {
            return Err(ArtinError::TableConstruction(format!(
                "{diagram}: expected a unique longest element, found {}",
                longest.len()
            )));
        }
        let w0 = longest[0];

        let tau: Vec<u32> = (0..size)
            .map(|g| mul[mul[w0 as usize * size + g] as usize * size + w0 as usize])
            .collect();

        Ok(CoxTable {
            diagram,
            rank,
            perms,
            right,
            left,
            mul,
            inv,
            length,
            rdesc,
            ldesc,
            word,
            w0,
            tau,
        })
    }

    pub fn diagram(&self) -> Diagram {
        self.diagram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of group elements.
    pub fn size(&self) -> usize {
        self.perms.len()
    }

    /// The permutation realizing element `g`.
    pub fn perm(&self, g: u32) -> &SignedPerm {
        &self.perms[g as usize]
    }

    /// Index of generator `s` as a group element.
    pub fn generator(&self, s: usize) -> u32 {
        self.right[s]
    }

    /// `g · s`.
    pub fn right_mul(&self, g: u32, s: usize) -> u32 {
        self.right[g as usize * self.rank + s]
    }

    /// `s · g`.
    pub fn left_mul(&self, s: usize, g: u32) -> u32 {
        self.left[g as usize * self.rank + s]
    }

    /// `g · h`.
    pub fn mul(&self, g: u32, h: u32) -> u32 {
        self.mul[g as usize * self.size() + h as usize]
    }

    pub fn inverse(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }

    pub fn length(&self, g: u32) -> u32 {
        self.length[g as usize]
    }

    /// Bitmask of generators `s` with `ℓ(gs) < ℓ(g)`.
    pub fn right_descents(&self, g: u32) -> u32 {
        self.rdesc[g as usize]
    }

    /// Bitmask of generators `s` with `ℓ(sg) < ℓ(g)`.
    pub fn left_descents(&self, g: u32) -> u32 {
        self.ldesc[g as usize]
    }

    /// One reduced word for `g`, as generator indices.
    pub fn reduced_word(&self, g: u32) -> &[u8] {
        &self.word[g as usize]
    }

    /// The longest element.
    pub fn longest(&self) -> u32 {
        self.w0
    }

    /// Conjugation by the longest element: `g ↦ w₀ g w₀`.
    pub fn tau(&self, g: u32) -> u32 {
        self.tau[g as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Diagram; 6] = [
        Diagram::A(1),
        Diagram::A(2),
        Diagram::A(3),
        Diagram::B(2),
        Diagram::B(3),
        Diagram::D(3),
    ];

    #[test]
    fn group_orders_match_the_classical_counts() {
        let expected = [2usize, 6, 24, 8, 48, 24];
        for (d, want) in ALL.iter().zip(expected) {
            let t = CoxTable::build(*d).expect("supported diagram");
            assert_eq!(t.size(), want, "group order of {d}");
        }
    }

    #[test]
    fn generator_pairs_satisfy_exactly_the_bond_orders() {
        for d in ALL {
            let t = CoxTable::build(d).expect("supported diagram");
            let m = d.coxeter_matrix();
            for i in 0..t.rank() {
                for j in 0..t.rank() {
                    if i == j {
                        continue;
                    }
                    let st = t.mul(t.generator(i), t.generator(j));
                    let mut p = st;
                    let mut order = 1;
                    while p != 0 {
                        p = t.mul(p, st);
                        order += 1;
                    }
                    assert_eq!(
                        order,
                        m.order(i, j),
                        "order of s{}s{} in {d}",
                        i + 1,
                        j + 1
                    );
                }
            }
        }
    }

    #[test]
    fn descents_characterize_length_drops_and_words_are_reduced() {
        for d in ALL {
            let t = CoxTable::build(d).expect("supported diagram");
            for g in 0..t.size() as u32 {
                assert_eq!(
                    t.length(g) as usize,
                    t.reduced_word(g).len(),
                    "stored word must be reduced in {d}"
                );
                let mut acc = 0u32;
                for &s in t.reduced_word(g) {
                    acc = t.right_mul(acc, s as usize);
                }
                assert_eq!(acc, g, "stored word must multiply back to g in {d}");
                for s in 0..t.rank() {
                    let drop = t.length(t.right_mul(g, s)) < t.length(g);
                    assert_eq!(
                        t.right_descents(g) & (1 << s) != 0,
                        drop,
                        "right descent bit of {g} at s{} in {d}",
                        s + 1
                    );
                    let drop = t.length(t.left_mul(s, g)) < t.length(g);
                    assert_eq!(
                        t.left_descents(g) & (1 << s) != 0,
                        drop,
                        "left descent bit of {g} at s{} in {d}",
                        s + 1
                    );
                }
            }
        }
    }

    #[test]
    fn longest_element_is_an_involution_with_full_descent_sets() {
        let lengths = [1u32, 3, 6, 4, 9, 6];
        for (d, want) in ALL.iter().zip(lengths) {
            let t = CoxTable::build(*d).expect("supported diagram");
            let w0 = t.longest();
            assert_eq!(t.length(w0), want, "length of the longest element of {d}");
            assert_eq!(t.mul(w0, w0), 0, "longest element squares to identity");
            assert_eq!(
                t.right_descents(w0),
                (1 << t.rank()) - 1,
                "every generator descends the longest element"
            );
        }
    }

    #[test]
    fn tau_is_a_length_preserving_involution_permuting_generators() {
        for d in ALL {
            let t = CoxTable::build(d).expect("supported diagram");
            for g in 0..t.size() as u32 {
                assert_eq!(t.tau(t.tau(g)), g, "tau must be an involution in {d}");
                assert_eq!(
                    t.length(t.tau(g)),
                    t.length(g),
                    "tau must preserve length in {d}"
                );
            }
            for s in 0..t.rank() {
                let img = t.tau(t.generator(s));
                assert_eq!(
                    t.length(img),
                    1,
                    "tau must send generators to generators in {d}"
                );
            }
        }
    }

    #[test]
    fn diagram_parsing_accepts_supported_names_and_rejects_others() {
        assert_eq!(Diagram::parse("A2").expect("valid"), Diagram::A(2));
        assert_eq!(Diagram::parse("b3").expect("valid"), Diagram::B(3));
        assert_eq!(Diagram::parse("D3").expect("valid"), Diagram::D(3));
        for bad in ["A4", "B1", "D4", "E6", "", "A", "Axy"] {
            assert!(
                Diagram::parse(bad).is_err(),
                "{bad:?} must be rejected as a diagram name"
            );
        }
    }
}
