//! Declared input domains.
//!
//! An [`InputDomain`] is the subset of input words over which a table or
//! gate claims injectivity. A gate that is not a permutation of its full
//! input space can still be perfectly reversible in practice when its
//! inputs are known to stay inside such a domain -- the BCD digits
//! `{0..9}` inside a 4-bit space being the motivating case.

use std::fmt;

use crate::error::{Error, Result, MAX_WIDTH};

/// An ordered, duplicate-free, non-empty set of input values of a fixed
/// bit width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InputDomain {
    width: u32,
    members: Vec<u32>,
}

impl InputDomain {
    /// Build a domain from any collection of member values.
    ///
    /// Members are sorted and deduplicated. The domain must end up
    /// non-empty and every member must fit in `width` bits.
    pub fn new(width: u32, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width });
        }
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if let Some(&value) = members.last() {
            if value >= 1 << width {
                return Err(Error::ValueTooWide { value, width });
            }
        }
        Ok(InputDomain { width, members })
    }

    /// All `2^width` input values.
    pub fn full(width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width });
        }
        Ok(InputDomain {
            width,
            members: (0..1 << width).collect(),
        })
    }

    /// The ten BCD digits `{0..9}` at width 4.
    pub fn bcd() -> Self {
        InputDomain {
            width: 4,
            members: (0..=9).collect(),
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    /// True when the domain covers every value of its width.
    pub fn is_full(&self) -> bool {
        self.members.len() == 1 << self.width
    }

    pub fn contains(&self, value: u32) -> bool {
        self.members.binary_search(&value).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }
}

/// Prints members as compact inclusive runs: `{0..9}`, `{0..3,7,12..15}`.
impl fmt::Display for InputDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut i = 0;
        let mut first = true;
        while i < self.members.len() {
            let start = self.members[i];
            let mut end = start;
            while i + 1 < self.members.len() && self.members[i + 1] == end + 1 {
                i += 1;
                end = self.members[i];
            }
            if !first {
                f.write_str(",")?;
            }
            if start == end {
                write!(f, "{start}")?;
            } else {
                write!(f, "{start}..{end}")?;
            }
            first = false;
            i += 1;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_dedups() {
        let d = InputDomain::new(4, [9, 2, 2, 0]).unwrap();
        assert_eq!(d.members(), &[0, 2, 9]);
        assert!(d.contains(2));
        assert!(!d.contains(1));
    }

    #[test]
    fn rejects_empty_and_out_of_range() {
        assert!(matches!(InputDomain::new(4, []), Err(Error::EmptyDomain)));
        assert!(matches!(
            InputDomain::new(4, [16]),
            Err(Error::ValueTooWide { value: 16, width: 4 })
        ));
        assert!(matches!(
            InputDomain::new(0, [0]),
            Err(Error::WidthOutOfRange { width: 0 })
        ));
    }

    #[test]
    fn bcd_is_first_ten() {
        let d = InputDomain::bcd();
        assert_eq!(d.width(), 4);
        assert_eq!(d.members(), &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert!(!d.is_full());
        assert!(InputDomain::full(4).unwrap().is_full());
    }

    #[test]
    fn display_uses_runs() {
        assert_eq!(InputDomain::bcd().to_string(), "{0..9}");
        assert_eq!(InputDomain::new(4, [5]).unwrap().to_string(), "{5}");
        assert_eq!(
            InputDomain::new(4, [0, 1, 2, 7, 12, 13]).unwrap().to_string(),
            "{0..2,7,12..13}"
        );
    }
}
