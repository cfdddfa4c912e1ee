use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::words::{FactorSet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecurrenceVerdict {
    RecurrentUpTo(usize),
    /// No `v` with `|uvw| <= search_depth` puts `uvw` in the set.
    NotRecurrentWithinDepth {
        u: Word,
        w: Word,
        search_depth: usize,
    },
}

impl RecurrenceVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, RecurrenceVerdict::RecurrentUpTo(_))
    }
}

/// Bounded recurrence check: for all members `u`, `w` of length at most
/// `up_to`, look for `v` with `uvw` in the set.
///
/// A failure is a refutation only for certified sets, and only relative to
/// the truncation depth.
pub fn is_recurrent_desk(s: &FactorSet, up_to: usize) -> Result<RecurrenceVerdict> {
    if up_to > s.depth() {
        return Err(Error::DepthExceeded { requested: up_to, depth: s.depth() });
    }
    let candidates: Vec<&Word> = s.words_up_to(up_to).collect();
    // members with no right extension; every other member is a prefix of one
    let maximal: Vec<&Word> = s
        .iter()
        .filter(|m| m.len() == s.depth() || s.alphabet().letters().all(|a| !s.contains(&m.append(a))))
        .collect();
    for u in &candidates {
        // every w reachable after u is a factor of some y with uy in s
        let mut reach: HashSet<&[u8]> = HashSet::new();
        for m in maximal.iter().filter(|m| m.len() > u.len() && m.starts_with(u)) {
            let tail = &m[u.len()..];
            for i in 0..tail.len() {
                for j in i + 1..=tail.len().min(i + up_to) {
                    reach.insert(&tail[i..j]);
                }
            }
        }
        for w in &candidates {
            if !w.is_empty() && !u.is_empty() && !reach.contains(w.letters()) {
                return Ok(RecurrenceVerdict::NotRecurrentWithinDepth {
                    u: (*u).clone(),
                    w: (*w).clone(),
                    search_depth: s.depth(),
                });
            }
        }
    }
    Ok(RecurrenceVerdict::RecurrentUpTo(up_to))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Completeness, Source};

    #[test]
    fn two_stars_are_not_recurrent() {
        let a = Alphabet::from_chars("uv").unwrap();
        let s = FactorSet::factors_of(
            a,
            8,
            [[0u8; 8].as_slice(), [1u8; 8].as_slice()],
            Completeness::CertifiedComplete,
            Source::Explicit,
        )
        .unwrap();
        assert_eq!(
            is_recurrent_desk(&s, 1).unwrap(),
            RecurrenceVerdict::NotRecurrentWithinDepth { u: Word::letter(0), w: Word::letter(1), search_depth: 8 }
        );
    }

    #[test]
    fn periodic_set_is_recurrent() {
        let a = Alphabet::from_chars("ab").unwrap();
        let s = FactorSet::factors_of(
            a,
            10,
            [[0u8, 1].repeat(8).as_slice()],
            Completeness::CertifiedComplete,
            Source::Explicit,
        )
        .unwrap();
        assert!(is_recurrent_desk(&s, 4).unwrap().holds());
    }
}
