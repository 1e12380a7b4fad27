//! Left-greedy normal forms for the braid-like groups presented by the
//! supported diagrams.
//!
//! Elements are stored as `Δ^k · x₁ ⋯ x_ℓ` where `Δ` lifts the longest
//! element of the finite quotient and each factor `xᵢ` lifts a nontrivial,
//! non-longest group element.  The sequence is *left-weighted*: every left
//! descent of `xᵢ₊₁` is a right descent of `xᵢ`, which makes the
//! factorization unique, so two words represent the same element exactly
//! when their normal forms are identical.

use serde::Serialize;

use super::coxtable::{CoxTable, Diagram};
use super::ArtinError;

/// A group element in left-greedy normal form.
///
/// `inf` is the exponent of the leading power of `Δ`; `factors` are indices
/// of nontrivial, non-longest elements of the finite quotient, stored
/// left-weighted.  Structural equality coincides with group equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BraidElement {
    diagram: Diagram,
    inf: i64,
    factors: Vec<u32>,
}

impl BraidElement {
    pub fn diagram(&self) -> Diagram {
        self.diagram
    }

    /// Largest `k` with `Δ^k` a prefix of the element.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    /// Smallest `k` with the element a prefix of `Δ^k`.
    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// Number of non-`Δ` factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }
}

impl CoxTable {
    /// The identity element.
    pub fn braid_identity(&self) -> BraidElement {
        BraidElement {
            diagram: self.diagram(),
            inf: 0,
            factors: Vec::new(),
        }
    }

    /// The element `Δ^k`.
    pub fn braid_delta_power(&self, k: i64) -> BraidElement {
        BraidElement {
            diagram: self.diagram(),
            inf: k,
            factors: Vec::new(),
        }
    }

    /// The canonical positive lift of a finite-quotient element.
    pub fn braid_lift(&self, g: u32) -> BraidElement {
        self.braid_normalize(0, vec![g])
    }

    /// Is the adjacent pair `(a, b)` left-weighted?
    fn pair_weighted(&self, a: u32, b: u32) -> bool {
        self.left_descents(b) & !self.right_descents(a) == 0
    }

    /// Restores the normal-form invariants of `Δ^inf · factors`.
    fn braid_normalize(&self, mut inf: i64, mut factors: Vec<u32>) -> BraidElement {
        let w0 = self.longest();
        loop {
            factors.retain(|&x| x != 0);
            let mut changed = false;
            for i in 0..factors.len().saturating_sub(1) {
                loop {
                    let pending = self.left_descents(factors[i + 1])
                        & !self.right_descents(factors[i]);
                    if pending == 0 {
                        break;
                    }
                    let s = pending.trailing_zeros() as usize;
                    factors[i] = self.right_mul(factors[i], s);
                    factors[i + 1] = self.left_mul(s, factors[i + 1]);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let leading = factors.iter().take_while(|&&x| x == w0).count();
        inf += leading as i64;
        factors.drain(..leading);
        debug_assert!(
            factors.windows(2).all(|p| self.pair_weighted(p[0], p[1])),
            "normalization must leave every adjacent pair left-weighted"
        );
        BraidElement {
            diagram: self.diagram(),
            inf,
            factors,
        }
    }

    /// Product of two elements in normal form.
    pub fn braid_mul(&self, a: &BraidElement, b: &BraidElement) -> BraidElement {
        assert_eq!(a.diagram, self.diagram(), "element belongs to this table");
        assert_eq!(b.diagram, self.diagram(), "element belongs to this table");
        let twist = b.inf.rem_euclid(2) == 1;
        let mut factors: Vec<u32> = a
            .factors
            .iter()
            .map(|&x| if twist { self.tau(x) } else { x })
            .collect();
        factors.extend_from_slice(&b.factors);
        self.braid_normalize(a.inf + b.inf, factors)
    }

    /// Product with a single generator or its inverse on the right.
    pub fn braid_mul_gen(&self, a: &BraidElement, s: usize, positive: bool) -> BraidElement {
        assert_eq!(a.diagram, self.diagram(), "element belongs to this table");
        if positive {
            let mut factors = a.factors.clone();
            factors.push(self.generator(s));
            self.braid_normalize(a.inf, factors)
        } else {
            // a·s⁻¹ = Δ^{inf−1} · τ(factors) · (w₀s), since s⁻¹ = Δ⁻¹·(w₀s).
            let mut factors: Vec<u32> = a.factors.iter().map(|&x| self.tau(x)).collect();
            factors.push(self.mul(self.longest(), self.generator(s)));
            self.braid_normalize(a.inf - 1, factors)
        }
    }

    /// Group inverse.
    pub fn braid_invert(&self, a: &BraidElement) -> BraidElement {
        assert_eq!(a.diagram, self.diagram(), "element belongs to this table");
        let w0 = self.longest();
        let mut acc = self.braid_identity();
        for &x in a.factors.iter().rev() {
            // x⁻¹ = Δ⁻¹ · (w₀ x⁻¹).
            let piece = BraidElement {
                diagram: self.diagram(),
                inf: -1,
                factors: vec![self.mul(w0, self.inverse(x))],
            };
            acc = self.braid_mul(&acc, &piece);
        }
        self.braid_mul(&acc, &self.braid_delta_power(-a.inf))
    }

    /// Evaluates a word over the generators.  Letter `±(i+1)` denotes the
    /// `i`-th generator or its inverse; two words evaluate to the same
    /// element exactly when the results are identical.
    pub fn normal_form(&self, word: &[i32]) -> Result<BraidElement, ArtinError> {
        let mut acc = self.braid_identity();
        for &letter in word {
            let idx = letter.unsigned_abs() as usize;
            if letter == 0 || idx > self.rank() {
                return Err(ArtinError::UnknownGenerator(letter));
            }
            acc = self.braid_mul_gen(&acc, idx - 1, letter > 0);
        }
        Ok(acc)
    }

    /// Image in the finite quotient: kill the distinction between a
    /// generator and its inverse.
    pub fn braid_projection(&self, a: &BraidElement) -> u32 {
        assert_eq!(a.diagram, self.diagram(), "element belongs to this table");
        let mut w = if a.inf.rem_euclid(2) == 1 {
            self.longest()
        } else {
            0
        };
        for &x in &a.factors {
            w = self.mul(w, x);
        }
        w
    }

    /// Compact display such as `e`, `D^-1(12)(2)`: the `Δ`-power followed by
    /// one parenthesized reduced word (1-based generator digits) per factor.
    pub fn braid_name(&self, a: &BraidElement) -> String {
        if a.is_identity() {
            return "e".to_string();
        }
        let mut out = String::new();
        if a.inf != 0 {
            out.push_str(&format!("D^{}", a.inf));
        }
        for &x in &a.factors {
            out.push('(');
            for &s in self.reduced_word(x) {
                out.push_str(&(s + 1).to_string());
            }
            out.push(')');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(d: Diagram) -> CoxTable {
        CoxTable::build(d).expect("supported diagram")
    }

    #[test]
    fn braid_relation_words_share_a_normal_form() {
        let t = table(Diagram::A(2));
        let lhs = t.normal_form(&[1, 2, 1]).expect("valid word");
        let rhs = t.normal_form(&[2, 1, 2]).expect("valid word");
        assert_eq!(lhs, rhs, "s1s2s1 and s2s1s2 must agree");
        assert_eq!(lhs.inf(), 1, "the common value is the half-twist");
        assert_eq!(lhs.canonical_length(), 0, "the half-twist is a pure Δ");
    }

    #[test]
    fn double_half_twist_is_central() {
        let t = table(Diagram::A(2));
        let delta2: Vec<i32> = vec![1, 2, 1, 1, 2, 1];
        for s in [1, 2] {
            let mut left = delta2.clone();
            left.push(s);
            let mut right = vec![s];
            right.extend_from_slice(&delta2);
            assert_eq!(
                t.normal_form(&left).expect("valid"),
                t.normal_form(&right).expect("valid"),
                "Δ² must commute with s{s}"
            );
        }
    }

    #[test]
    fn generator_cancels_its_inverse() {
        for d in [Diagram::A(2), Diagram::B(3), Diagram::D(3)] {
            let t = table(d);
            for s in 1..=t.rank() as i32 {
                let nf = t.normal_form(&[s, -s]).expect("valid word");
                assert!(nf.is_identity(), "s·s⁻¹ must vanish in {d}");
                let nf = t.normal_form(&[-s, s]).expect("valid word");
                assert!(nf.is_identity(), "s⁻¹·s must vanish in {d}");
            }
        }
    }

    #[test]
    fn normal_forms_are_left_weighted_and_stable_under_renormalization() {
        let t = table(Diagram::B(2));
        let word = [1, 2, -1, 2, 2, -2, 1, 1, -2];
        let nf = t.normal_form(&word).expect("valid word");
        for pair in nf.factors().windows(2) {
            assert_eq!(
                t.left_descents(pair[1]) & !t.right_descents(pair[0]),
                0,
                "adjacent factors must be left-weighted"
            );
        }
        let again = t.braid_normalize(nf.inf(), nf.factors().to_vec());
        assert_eq!(nf, again, "renormalizing a normal form must not change it");
    }

    #[test]
    fn multiplication_agrees_with_word_concatenation() {
        let t = table(Diagram::A(3));
        let u = [1, -2, 3, 3, -1];
        let v = [2, 2, -3, 1];
        let w: Vec<i32> = u.iter().chain(v.iter()).copied().collect();
        let lhs = t.braid_mul(
            &t.normal_form(&u).expect("valid"),
            &t.normal_form(&v).expect("valid"),
        );
        assert_eq!(lhs, t.normal_form(&w).expect("valid"));
    }

    #[test]
    fn inverse_multiplies_to_identity() {
        for d in [Diagram::A(3), Diagram::B(3), Diagram::D(3)] {
            let t = table(d);
            let word = [1, 2, -3, 1, -1, 2, 3, -2];
            let g = t.normal_form(&word).expect("valid word");
            let gi = t.braid_invert(&g);
            assert!(
                t.braid_mul(&g, &gi).is_identity(),
                "g·g⁻¹ must vanish in {d}"
            );
            assert!(
                t.braid_mul(&gi, &g).is_identity(),
                "g⁻¹·g must vanish in {d}"
            );
            assert_eq!(gi.inf(), -g.sup(), "inversion must swap and negate bounds");
            assert_eq!(gi.sup(), -g.inf(), "inversion must swap and negate bounds");
        }
    }

    #[test]
    fn projection_to_the_finite_quotient_is_multiplicative() {
        let t = table(Diagram::B(2));
        let u = t.normal_form(&[1, -2, 1, 1]).expect("valid");
        let v = t.normal_form(&[-1, 2, -2, 2]).expect("valid");
        let uv = t.braid_mul(&u, &v);
        assert_eq!(
            t.braid_projection(&uv),
            t.mul(t.braid_projection(&u), t.braid_projection(&v)),
            "projection must be a homomorphism"
        );
    }

    #[test]
    fn names_render_delta_powers_and_factor_words() {
        let t = table(Diagram::A(2));
        assert_eq!(t.braid_name(&t.braid_identity()), "e");
        assert_eq!(t.braid_name(&t.braid_delta_power(-1)), "D^-1");
        let g = t.normal_form(&[1, 2]).expect("valid");
        assert_eq!(t.braid_name(&g), "(12)");
    }
}
