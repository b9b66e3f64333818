use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Ordered finite alphabet. Symbol order defines the lexicographic order on words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
    separator: String,
}

impl Alphabet {
    pub fn new<I, T>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidInput("alphabet must contain at least one symbol".into()));
        }
        if symbols.len() > 256 {
            return Err(Error::InvalidInput("alphabet exceeds 256 symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidInput("empty symbol identifier".into()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidInput(format!("duplicate symbol {s:?}")));
            }
        }
        let single = symbols.iter().all(|s| s.chars().count() == 1);
        let separator = if single { String::new() } else { ",".to_string() };
        Ok(Self { symbols, separator })
    }

    /// Symbols `"0"`, `"1"`, …, `"k-1"`.
    pub fn numeric(k: usize) -> Self {
        Self::new((0..k).map(|i| i.to_string())).expect("valid numeric alphabet")
    }

    /// Symbols `"lo"`, …, `"hi"` (inclusive).
    pub fn range(lo: usize, hi: usize) -> Self {
        Self::new((lo..=hi).map(|i| i.to_string())).expect("valid numeric alphabet")
    }

    pub fn with_separator(mut self, sep: impl Into<String>) -> Result<Self> {
        let sep = sep.into();
        if sep.is_empty() && self.symbols.iter().any(|s| s.chars().count() != 1) {
            return Err(Error::InvalidInput(
                "multi-character symbols need a non-empty separator".into(),
            ));
        }
        self.separator = sep;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn separator(&self) -> &str {
        &self.separator
    }

    pub fn symbol(&self, i: u8) -> &str {
        &self.symbols[i as usize]
    }

    pub fn index_of(&self, s: &str) -> Option<u8> {
        self.symbols.iter().position(|t| t == s).map(|i| i as u8)
    }

    /// Parses a word written with this alphabet's symbols and separator.
    pub fn parse(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let unknown = |t: &str| Error::InvalidInput(format!("unknown symbol {t:?} in {text:?}"));
        let mut out = Vec::new();
        if self.separator.is_empty() {
            for ch in text.chars() {
                let mut buf = [0u8; 4];
                let t = ch.encode_utf8(&mut buf);
                out.push(self.index_of(t).ok_or_else(|| unknown(t))?);
            }
        } else {
            for t in text.split(self.separator.as_str()) {
                out.push(self.index_of(t).ok_or_else(|| unknown(t))?);
            }
        }
        Ok(Word::from(out))
    }

    pub fn render(&self, w: &[u8]) -> String {
        w.iter().map(|&a| self.symbol(a)).collect::<Vec<_>>().join(&self.separator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_roundtrip() {
        let a = Alphabet::numeric(2);
        let w = a.parse("0110").unwrap();
        assert_eq!(w.as_slice(), &[0, 1, 1, 0]);
        assert_eq!(a.render(&w), "0110");
        assert!(a.parse("012").is_err());
        assert!(a.parse("").unwrap().is_empty());
    }

    #[test]
    fn multi_character_symbols_use_separator() {
        let a = Alphabet::range(1, 12);
        assert_eq!(a.separator(), ",");
        let w = a.parse("12,1,3").unwrap();
        assert_eq!(w.as_slice(), &[11, 0, 2]);
        assert_eq!(a.render(&w), "12,1,3");
        assert!(a.clone().with_separator("").is_err());
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }
}
