//! Partial function specifications and their completion to permutations.
//!
//! A [`PartialSpec`] assigns outputs only over a declared domain. When
//! the assignment is injective and the widths are square, it extends to
//! a full permutation: unassigned inputs take the outputs nothing else
//! uses. The completed table is a true reversible gate that restricts to
//! the original specification on its domain, which is exactly how new
//! partially reversible gates are proposed for arbitrary functions.

use crate::domain::InputDomain;
use crate::error::{Collision, Error, Result};
use crate::table::{Injectivity, TruthTable};

/// How unassigned inputs are matched to unused outputs.
///
/// A single strategy is built in today; the parameter keeps the
/// operation signature open for alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompletionStrategy {
    /// Unassigned inputs in increasing order receive the smallest unused
    /// outputs in increasing order. Deterministic.
    #[default]
    Lexicographic,
}

/// An output assignment over a declared input domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSpec {
    in_width: u32,
    out_width: u32,
    domain: InputDomain,
    /// Aligned with `domain.members()`.
    outputs: Vec<u32>,
}

impl PartialSpec {
    /// `outputs[i]` is the output assigned to `domain.members()[i]`.
    pub fn new(
        in_width: u32,
        out_width: u32,
        domain: InputDomain,
        outputs: Vec<u32>,
    ) -> Result<Self> {
        if domain.width() != in_width {
            return Err(Error::WidthMismatch {
                expected: in_width,
                actual: domain.width(),
            });
        }
        if outputs.len() != domain.len() {
            return Err(Error::RowCount {
                expected: domain.len(),
                actual: outputs.len(),
            });
        }
        if out_width == 0 || out_width > crate::MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width: out_width });
        }
        if let Some(&value) = outputs.iter().find(|&&v| v >= 1 << out_width) {
            return Err(Error::ValueTooWide {
                value,
                width: out_width,
            });
        }
        Ok(PartialSpec {
            in_width,
            out_width,
            domain,
            outputs,
        })
    }

    /// Build from `(input, output)` pairs; the domain is the set of keys.
    pub fn from_pairs(
        in_width: u32,
        out_width: u32,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let mut pairs: Vec<(u32, u32)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateAssignment { input: w[0].0 });
            }
        }
        let domain = InputDomain::new(in_width, pairs.iter().map(|&(x, _)| x))?;
        let outputs = pairs.iter().map(|&(_, y)| y).collect();
        PartialSpec::new(in_width, out_width, domain, outputs)
    }

    pub fn in_width(&self) -> u32 {
        self.in_width
    }

    pub fn out_width(&self) -> u32 {
        self.out_width
    }

    pub fn domain(&self) -> &InputDomain {
        &self.domain
    }

    /// Assigned outputs, aligned with `domain().members()`.
    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    /// The assigned output for `input`, if it is in the domain.
    pub fn output_for(&self, input: u32) -> Option<u32> {
        self.domain
            .members()
            .binary_search(&input)
            .ok()
            .map(|i| self.outputs[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.domain.iter().zip(self.outputs.iter().copied())
    }

    /// Injectivity of the assignment itself, with the same sorted
    /// collision reporting as table checks.
    pub fn injectivity(&self) -> Injectivity {
        let mut pairs: Vec<(u32, u32)> = self.iter().map(|(x, y)| (y, x)).collect();
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
            Injectivity::Injective
        } else {
            collisions.sort_unstable_by_key(|c| (c.input_a, c.input_b));
            Injectivity::Collisions(collisions)
        }
    }

    /// Extend the assignment to a full permutation.
    ///
    /// Requires a square, injective spec. The result agrees with the
    /// spec on every domain member and passes `is_bijective`; under
    /// [`CompletionStrategy::Lexicographic`] two calls yield identical
    /// tables.
    pub fn complete_to_permutation(&self, strategy: CompletionStrategy) -> Result<TruthTable> {
        if self.in_width != self.out_width {
            return Err(Error::NotSquare {
                in_width: self.in_width,
                out_width: self.out_width,
            });
        }
        if let Injectivity::Collisions(collisions) = self.injectivity() {
            return Err(Error::NotInjective { collisions });
        }
        let CompletionStrategy::Lexicographic = strategy;
        let size = 1usize << self.in_width;
        let mut used = vec![false; size];
        for &y in &self.outputs {
            used[y as usize] = true;
        }
        let mut unused = (0..size as u32).filter(|&y| !used[y as usize]);
        let mut rows = Vec::with_capacity(size);
        for x in 0..size as u32 {
            match self.output_for(x) {
                Some(y) => rows.push(y),
                None => rows.push(unused.next().expect("as many unused outputs as unassigned inputs")),
            }
        }
        TruthTable::from_rows(self.in_width, self.out_width, rows)
    }
}
