use std::fmt;

use serde::{Serialize, Serializer};

/// Byte used to print the end marker.
pub const END_MARKER_BYTE: u8 = b'$';

/// A symbol of a word that may carry the end marker.
///
/// The marker is out of band: it ranks strictly below every byte, so a text
/// containing byte `0x24` never collides with it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    End,
    Byte(u8),
}

impl Symbol {
    /// Dense rank in `0..=256`, preserving the order.
    #[inline]
    pub fn rank(self) -> u32 {
        match self {
            Symbol::End => 0,
            Symbol::Byte(b) => b as u32 + 1,
        }
    }

    /// Printable byte, with the marker shown as `$`.
    #[inline]
    pub fn display_byte(self) -> u8 {
        match self {
            Symbol::End => END_MARKER_BYTE,
            Symbol::Byte(b) => b,
        }
    }

    pub fn is_end(self) -> bool {
        matches!(self, Symbol::End)
    }

    /// Lifts plain bytes.
    pub fn lift(word: &[u8]) -> Vec<Symbol> {
        word.iter().map(|&b| Symbol::Byte(b)).collect()
    }

    /// Reads a printed text in which every `$` byte denotes the end marker.
    pub fn parse_marked(text: &[u8]) -> Vec<Symbol> {
        text.iter()
            .map(|&b| {
                if b == END_MARKER_BYTE {
                    Symbol::End
                } else {
                    Symbol::Byte(b)
                }
            })
            .collect()
    }

    /// Renders symbols as bytes, the marker as `$`.
    pub fn render(symbols: &[Symbol]) -> Vec<u8> {
        symbols.iter().map(|s| s.display_byte()).collect()
    }

    /// Renders symbols as a `String`, one char per byte (Latin-1).
    pub fn render_string(symbols: &[Symbol]) -> String {
        symbols.iter().map(|s| s.display_byte() as char).collect()
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol::Byte(b)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_byte() as char)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        serializer.serialize_str((self.display_byte() as char).encode_utf8(&mut buf))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_marker_sorts_first() {
        assert!(Symbol::End < Symbol::Byte(0));
        assert!(Symbol::Byte(b'a') < Symbol::Byte(b'b'));
        assert_eq!(Symbol::End.rank(), 0);
        assert_eq!(Symbol::Byte(255).rank(), 256);
    }

    #[test]
    fn marked_round_trip() {
        let s = Symbol::parse_marked(b"b$a");
        assert_eq!(s, vec![Symbol::Byte(b'b'), Symbol::End, Symbol::Byte(b'a')]);
        assert_eq!(Symbol::render(&s), b"b$a");
    }
}
