//! Character-level encoding of molecular strings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Fixed length of encoded vectors; shorter strings are zero-padded.
pub const ENCODED_LEN: usize = 139;

/// Ordered character-to-index map built from a corpus.
///
/// Characters are sorted ascending by character code and indexed from 0, so
/// the dictionary is a pure function of the corpus character set. Index 0 is
/// also the padding value; a corpus whose first character collides with the
/// padding keeps that behavior for fidelity with fixed-length pipelines, and
/// [`CharDictionary::reserve_padding`] gives the collision-free variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharDictionary {
    index: BTreeMap<char, u16>,
    /// When true, index 0 is reserved for padding and characters start at 1.
    padding_reserved: bool,
}

/// Collects the unique characters of `corpus` into a dictionary.
pub fn build_dictionary<S: AsRef<str>>(corpus: &[S]) -> Result<CharDictionary> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut chars: Vec<char> = corpus
        .iter()
        .flat_map(|s| s.as_ref().chars())
        .collect();
    chars.sort_unstable();
    chars.dedup();
    if chars.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let index = chars
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i as u16))
        .collect();
    Ok(CharDictionary {
        index,
        padding_reserved: false,
    })
}

impl CharDictionary {
    /// Shifts every index up by one so 0 encodes only padding.
    pub fn reserve_padding(mut self) -> Self {
        if !self.padding_reserved {
            for v in self.index.values_mut() {
                *v += 1;
            }
            self.padding_reserved = true;
        }
        self
    }

    pub fn padding_reserved(&self) -> bool {
        self.padding_reserved
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<u16> {
        self.index.get(&c).copied()
    }

    /// Entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (char, u16)> + '_ {
        self.index.iter().map(|(&c, &i)| (c, i))
    }

    fn char_at(&self, index: u16) -> Option<char> {
        self.index
            .iter()
            .find(|(_, &i)| i == index)
            .map(|(&c, _)| c)
    }
}

/// Encodes a string as character indices zero-padded to `len`.
///
/// Unknown characters report the character and its position; strings longer
/// than `len` are rejected.
pub fn encode_smiles(s: &str, dict: &CharDictionary, len: usize) -> Result<Vec<u16>> {
    let count = s.chars().count();
    if count > len {
        return Err(Error::OverlongString {
            len: count,
            cap: len,
        });
    }
    let mut out = Vec::with_capacity(len);
    for (pos, ch) in s.chars().enumerate() {
        let idx = dict
            .index_of(ch)
            .ok_or(Error::UnknownCharacter { ch, pos })?;
        out.push(idx);
    }
    out.resize(len, 0);
    Ok(out)
}

/// Strips trailing padding and maps indices back to characters. The inverse
/// of [`encode_smiles`] for any corpus string when padding cannot be confused
/// with a real index (empty strings and the index-0 character caveat aside).
pub fn decode_indices(encoded: &[u16], dict: &CharDictionary) -> Result<String> {
    let mut end = encoded.len();
    while end > 0 && encoded[end - 1] == 0 {
        end -= 1;
    }
    encoded[..end]
        .iter()
        .enumerate()
        .map(|(pos, &idx)| {
            dict.char_at(idx).ok_or(Error::MalformedRow {
                row: pos,
                message: format!("index {idx} not in dictionary"),
            })
        })
        .collect()
}
