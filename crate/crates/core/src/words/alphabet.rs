use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// A finite ordered alphabet.
///
/// Symbols are arbitrary nonempty strings. When every symbol is a single
/// character, words print and parse as plain strings (`"abaab"`); otherwise
/// letters are separated by `.` (`"r0.r2.r1"`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet must be nonempty".into()));
        }
        if symbols.len() > Letter::MAX as usize + 1 {
            return Err(Error::Invalid("alphabet too large".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(['.', ',', ';', ' ']) {
                return Err(Error::Invalid(format!("bad symbol `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::Invalid(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Single-character alphabet from a string such as `"abc"`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    /// Fresh alphabet `prefix0 < prefix1 < ...` of the given size.
    pub fn fresh(prefix: &str, size: usize) -> Result<Self> {
        Alphabet::new((0..size).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        (0..self.symbols.len()).map(|i| i as Letter)
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::LetterNotInAlphabet(symbol.to_string()))
    }

    pub fn is_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.iter().all(|&l| (l as usize) < self.symbols.len())
    }

    pub fn format(&self, w: &Word) -> String {
        if self.is_single_char() {
            w.iter().map(|&l| self.symbol(l)).collect()
        } else {
            w.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(".")
        }
    }

    /// Parse a word. `""`, `"1"` and `"ε"` denote the empty word unless the
    /// alphabet uses those symbols.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || ((text == "1" || text == "ε") && self.letter(text).is_err()) {
            return Ok(Word::empty());
        }
        let letters = if self.is_single_char() && !text.contains('.') {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.letter(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split(['.', ' ']).filter(|s| !s.is_empty()).map(|s| self.letter(s)).collect::<Result<Vec<_>>>()?
        };
        Ok(Word::new(letters))
    }

    /// Parse a comma- or whitespace-separated list of words.
    pub fn parse_list(&self, text: &str) -> Result<Vec<Word>> {
        text.split([',', ';'])
            .flat_map(|chunk| {
                if self.is_single_char() {
                    chunk.split_whitespace().map(str::to_string).collect::<Vec<_>>()
                } else {
                    vec![chunk.trim().to_string()]
                }
            })
            .filter(|s| !s.is_empty())
            .map(|s| self.parse(&s))
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}
