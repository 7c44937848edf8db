//! Exhaustive truth tables and reversibility checks.
//!
//! A [`TruthTable`] stores one output word per input value, densely
//! indexed by the input. All reversibility questions -- is the table a
//! permutation, is it injective when inputs are restricted to a domain,
//! what is its inverse -- are answered by exhaustive enumeration, which
//! the [`MAX_WIDTH`] bound keeps cheap.

use std::ops::Index;

use crate::domain::InputDomain;
use crate::error::{Collision, Error, Result, MAX_WIDTH};
use crate::word::BitWord;

/// An exhaustive `n`-input, `m`-output function table.
///
/// Row `x` holds the output word for input value `x`. Tables are
/// immutable once built and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    in_width: u32,
    out_width: u32,
    rows: Vec<u32>,
}

/// Outcome of an injectivity check over a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injectivity {
    Injective,
    /// Every colliding pair, sorted by `(input_a, input_b)` with
    /// `input_a < input_b`.
    Collisions(Vec<Collision>),
}

impl Injectivity {
    pub fn is_injective(&self) -> bool {
        matches!(self, Injectivity::Injective)
    }

    /// The colliding pairs; empty when injective.
    pub fn collisions(&self) -> &[Collision] {
        match self {
            Injectivity::Injective => &[],
            Injectivity::Collisions(cs) => cs,
        }
    }
}

impl TruthTable {
    /// Build a table from its `2^in_width` rows in ascending input order.
    pub fn from_rows(in_width: u32, out_width: u32, rows: Vec<u32>) -> Result<Self> {
        check_width(in_width)?;
        check_width(out_width)?;
        let expected = 1usize << in_width;
        if rows.len() != expected {
            return Err(Error::RowCount {
                expected,
                actual: rows.len(),
            });
        }
        if let Some(&value) = rows.iter().find(|&&r| r >= 1 << out_width) {
            return Err(Error::ValueTooWide {
                value,
                width: out_width,
            });
        }
        Ok(TruthTable {
            in_width,
            out_width,
            rows,
        })
    }

    /// Tabulate `f` over every input value.
    pub fn from_fn(in_width: u32, out_width: u32, mut f: impl FnMut(u32) -> u32) -> Result<Self> {
        check_width(in_width)?;
        let rows = (0..1u32 << in_width).map(|x| f(x)).collect();
        TruthTable::from_rows(in_width, out_width, rows)
    }

    /// The identity permutation on `width` bits.
    pub fn identity(width: u32) -> Result<Self> {
        check_width(width)?;
        Ok(TruthTable {
            in_width: width,
            out_width: width,
            rows: (0..1 << width).collect(),
        })
    }

    pub fn in_width(&self) -> u32 {
        self.in_width
    }

    pub fn out_width(&self) -> u32 {
        self.out_width
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Output word for `input`, as a [`BitWord`] of the output width.
    pub fn output_word(&self, input: BitWord) -> Result<BitWord> {
        if input.width() != self.in_width {
            return Err(Error::WidthMismatch {
                expected: self.in_width,
                actual: input.width(),
            });
        }
        BitWord::new(self.rows[input.value() as usize], self.out_width)
    }

    /// True iff the rows form a permutation of `{0 .. 2^n - 1}`.
    ///
    /// Requires a square table (`in_width == out_width`).
    pub fn is_bijective(&self) -> Result<bool> {
        if self.in_width != self.out_width {
            return Err(Error::NotSquare {
                in_width: self.in_width,
                out_width: self.out_width,
            });
        }
        let mut seen = vec![false; self.rows.len()];
        for &out in &self.rows {
            if seen[out as usize] {
                return Ok(false);
            }
            seen[out as usize] = true;
        }
        Ok(true)
    }

    /// Check injectivity with inputs restricted to `domain`.
    ///
    /// When the restriction is not injective, every colliding pair is
    /// reported, sorted by `(input_a, input_b)` -- not just the first
    /// one found.
    pub fn injective_on(&self, domain: &InputDomain) -> Result<Injectivity> {
        if domain.width() != self.in_width {
            return Err(Error::WidthMismatch {
                expected: self.in_width,
                actual: domain.width(),
            });
        }
        let mut pairs: Vec<(u32, u32)> = domain
            .iter()
            .map(|x| (self.rows[x as usize], x))
            .collect();
        pairs.sort_unstable();
        let mut collisions = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let mut j = i + 1;
            while j < pairs.len() && pairs[j].0 == pairs[i].0 {
                j += 1;
            }
            for a in i..j {
                for b in a + 1..j {
                    collisions.push(Collision {
                        input_a: pairs[a].1,
                        input_b: pairs[b].1,
                        output: pairs[i].0,
                    });
                }
            }
            i = j;
        }
        if collisions.is_empty() {
            Ok(Injectivity::Injective)
        } else {
            collisions.sort_unstable_by_key(|c| (c.input_a, c.input_b));
            Ok(Injectivity::Collisions(collisions))
        }
    }

    /// The inverse permutation. Rejects non-bijective tables with a
    /// collision witness.
    pub fn invert(&self) -> Result<TruthTable> {
        if self.in_width != self.out_width {
            return Err(Error::NotSquare {
                in_width: self.in_width,
                out_width: self.out_width,
            });
        }
        let full = InputDomain::full(self.in_width)?;
        if let Injectivity::Collisions(cs) = self.injective_on(&full)? {
            return Err(Error::NotBijective { witness: cs[0] });
        }
        let mut rows = vec![0u32; self.rows.len()];
        for (x, &y) in self.rows.iter().enumerate() {
            rows[y as usize] = x as u32;
        }
        Ok(TruthTable {
            in_width: self.in_width,
            out_width: self.out_width,
            rows,
        })
    }

    /// True iff `self[x] == other[x]` for every `x` in `domain`.
    pub fn equal_on(&self, other: &TruthTable, domain: &InputDomain) -> Result<bool> {
        if other.in_width != self.in_width {
            return Err(Error::WidthMismatch {
                expected: self.in_width,
                actual: other.in_width,
            });
        }
        if other.out_width != self.out_width {
            return Err(Error::WidthMismatch {
                expected: self.out_width,
                actual: other.out_width,
            });
        }
        if domain.width() != self.in_width {
            return Err(Error::WidthMismatch {
                expected: self.in_width,
                actual: domain.width(),
            });
        }
        Ok(domain
            .iter()
            .all(|x| self.rows[x as usize] == other.rows[x as usize]))
    }
}

impl Index<u32> for TruthTable {
    type Output = u32;

    fn index(&self, input: u32) -> &u32 {
        &self.rows[input as usize]
    }
}

fn check_width(width: u32) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::WidthOutOfRange { width });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn add_mod_16(k: u32) -> TruthTable {
        TruthTable::from_fn(4, 4, |x| (x + k) % 16).unwrap()
    }

    fn toffoli() -> TruthTable {
        TruthTable::from_fn(3, 3, |x| {
            let (a, b, c) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
            (a << 2) | (b << 1) | ((a & b) ^ c)
        })
        .unwrap()
    }

    #[test]
    fn identity_is_bijective() {
        assert!(TruthTable::identity(4).unwrap().is_bijective().unwrap());
    }

    #[test]
    fn toffoli_is_bijective() {
        assert!(toffoli().is_bijective().unwrap());
    }

    #[test]
    fn bijective_requires_square_table() {
        let t = TruthTable::from_fn(2, 1, |x| x & 1).unwrap();
        assert!(matches!(
            t.is_bijective(),
            Err(Error::NotSquare {
                in_width: 2,
                out_width: 1
            })
        ));
    }

    #[test]
    fn identity_injective_on_any_domain() {
        let t = TruthTable::identity(4).unwrap();
        for d in [InputDomain::bcd(), InputDomain::full(4).unwrap()] {
            assert!(t.injective_on(&d).unwrap().is_injective());
        }
    }

    #[test]
    fn collisions_fully_enumerated_and_sorted() {
        // Constant table: every pair of domain members collides.
        let t = TruthTable::from_fn(2, 2, |_| 0).unwrap();
        let d = InputDomain::full(2).unwrap();
        let verdict = t.injective_on(&d).unwrap();
        let expected: Vec<Collision> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .into_iter()
            .map(|(a, b)| Collision {
                input_a: a,
                input_b: b,
                output: 0,
            })
            .collect();
        assert_eq!(verdict.collisions(), expected.as_slice());
    }

    #[test]
    fn domain_width_mismatch_rejected() {
        let t = TruthTable::identity(4).unwrap();
        let d = InputDomain::full(3).unwrap();
        assert!(matches!(
            t.injective_on(&d),
            Err(Error::WidthMismatch {
                expected: 4,
                actual: 3
            })
        ));
    }

    #[test]
    fn invert_identity() {
        let t = TruthTable::identity(4).unwrap();
        assert_eq!(t.invert().unwrap(), t);
    }

    #[test]
    fn invert_add3_is_sub3() {
        // Modular-arithmetic oracle: (x + 3) and (x + 13) are inverse mod 16.
        assert_eq!(add_mod_16(3).invert().unwrap(), add_mod_16(13));
    }

    #[test]
    fn invert_rejects_non_bijective_with_witness() {
        let t = TruthTable::from_fn(2, 2, |_| 1).unwrap();
        match t.invert() {
            Err(Error::NotBijective { witness }) => {
                assert_eq!(witness.input_a, 0);
                assert_eq!(witness.input_b, 1);
                assert_eq!(witness.output, 1);
            }
            other => panic!("expected NotBijective, got {other:?}"),
        }
    }

    #[test]
    fn equal_on_cases() {
        let add3 = add_mod_16(3);
        let id = TruthTable::identity(4).unwrap();
        let bcd = InputDomain::bcd();
        assert!(add3.equal_on(&add3, &bcd).unwrap());
        assert!(!add3.equal_on(&id, &bcd).unwrap());
        // Agree only above the BCD range.
        let t = TruthTable::from_fn(4, 4, |x| if x < 10 { x } else { (x + 3) % 16 }).unwrap();
        assert!(!t.equal_on(&add3, &bcd).unwrap());
        assert!(t
            .equal_on(&add3, &InputDomain::new(4, 10..16).unwrap())
            .unwrap());
    }

    #[test]
    fn row_count_enforced() {
        assert!(matches!(
            TruthTable::from_rows(4, 4, vec![0; 15]),
            Err(Error::RowCount {
                expected: 16,
                actual: 15
            })
        ));
    }

    #[test]
    fn output_word_lookup() {
        let t = add_mod_16(3);
        let out = t.output_word(BitWord::new(7, 4).unwrap()).unwrap();
        assert_eq!(out.value(), 10);
        assert!(t.output_word(BitWord::new(0, 3).unwrap()).is_err());
    }

    fn permutation(width: u32) -> impl Strategy<Value = TruthTable> {
        Just((0..1u32 << width).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |rows| TruthTable::from_rows(width, width, rows).unwrap())
    }

    fn any_permutation() -> impl Strategy<Value = TruthTable> {
        (1u32..=8).prop_flat_map(permutation)
    }

    fn any_function() -> impl Strategy<Value = TruthTable> {
        (1u32..=8).prop_flat_map(|n| {
            prop::collection::vec(0..1u32 << n, 1usize << n)
                .prop_map(move |rows| TruthTable::from_rows(n, n, rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn invert_is_involution(t in any_permutation()) {
            prop_assert_eq!(t.invert().unwrap().invert().unwrap(), t);
        }

        #[test]
        fn bijective_iff_injective_on_full_domain(t in any_function()) {
            let full = InputDomain::full(t.in_width()).unwrap();
            prop_assert_eq!(
                t.is_bijective().unwrap(),
                t.injective_on(&full).unwrap().is_injective()
            );
        }

        #[test]
        fn injectivity_is_monotone_under_subsets(
            t in any_function(),
            picks in prop::collection::vec(any::<prop::sample::Index>(), 1..40),
        ) {
            let full = InputDomain::full(t.in_width()).unwrap();
            let members: Vec<u32> = picks
                .iter()
                .map(|ix| ix.index(full.len()) as u32)
                .collect();
            let domain = InputDomain::new(t.in_width(), members.clone()).unwrap();
            if t.injective_on(&domain).unwrap().is_injective() {
                // Any subset stays injective.
                let half: Vec<u32> = domain.iter().step_by(2).collect();
                let sub = InputDomain::new(t.in_width(), half).unwrap();
                prop_assert!(t.injective_on(&sub).unwrap().is_injective());
            }
        }
    }
}
