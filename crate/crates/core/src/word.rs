//! Fixed-width bit vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, MAX_WIDTH};

/// A bit vector of known width, at most [`MAX_WIDTH`] bits.
///
/// Bit 0 is the least significant bit. `Display` prints the most
/// significant bit first, matching the left-to-right column order of
/// truth tables: `BitWord::new(0b1001, 4)` prints as `1001`.
///
/// The zero-width word is the empty vector; a circuit with no garbage
/// outputs produces one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitWord {
    value: u32,
    width: u32,
}

impl BitWord {
    pub fn new(value: u32, width: u32) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width });
        }
        if width < 32 && value >= 1 << width {
            return Err(Error::ValueTooWide { value, width });
        }
        Ok(BitWord { value, width })
    }

    /// The zero-width word.
    pub fn empty() -> Self {
        BitWord { value: 0, width: 0 }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0
    }

    /// Bit `i`, counting from the least significant end.
    ///
    /// Panics if `i >= width`.
    pub fn bit(&self, i: u32) -> bool {
        assert!(
            i < self.width,
            "bit index {i} out of range for width {}",
            self.width
        );
        (self.value >> i) & 1 == 1
    }

    /// Parse a most-significant-bit-first string of `0`/`1` characters.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let width = s.len() as u32;
        if width > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width });
        }
        let mut value = 0u32;
        for ch in s.chars() {
            value = (value << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::BadBit(other)),
                };
        }
        Ok(BitWord { value, width })
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitWord::parse_bits(s)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width).rev() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
