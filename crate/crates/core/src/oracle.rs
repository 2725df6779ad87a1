//! Brute-force reference for small words.
//!
//! A set `E` of letters admits a fixed-point morphism with exactly `E`
//! expanding iff `w` splits into blocks, each holding exactly one occurrence
//! of an `E`-letter, such that blocks holding the same `E`-letter are equal.
//! The oracle enumerates every placement of block borders, for every
//! candidate `E` in order of increasing size. It shares no code with the
//! factorizer beyond the [`Word`] type.

use crate::morphism::Morphism;
use crate::word::{Letter, Word};
use crate::{Error, Result};

pub const DEFAULT_MAX_LEN: usize = 16;

/// Outcome of a minimum expanding-set search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    /// Minimum `|E|` over nonempty `E` admitting a block factorization; 0 for
    /// the empty word.
    pub min_size: usize,
    /// The first minimum `E` found, ascending by letter id.
    pub expanding: Vec<Letter>,
    /// Block borders `0 = c_0 < c_1 < ... < c_q = n` of the witness.
    pub cuts: Vec<usize>,
    /// Whether `expanding` is a proper subset of the alphabet.
    pub proper: bool,
}

impl OracleVerdict {
    pub fn primitive(&self) -> bool {
        !self.proper
    }

    /// The morphism mapping each block's `E`-letter to that block.
    pub fn morphism(&self, w: &Word) -> Morphism {
        witness_morphism(w, &self.expanding, &self.cuts)
    }
}

/// Exhaustive search with a word-length guard.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    max_len: Option<usize>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_len: Some(DEFAULT_MAX_LEN),
        }
    }
}

impl Oracle {
    pub fn with_max_len(max_len: usize) -> Self {
        Oracle {
            max_len: Some(max_len),
        }
    }

    /// No length guard; running time grows exponentially with `|w|`.
    pub fn unbounded() -> Self {
        Oracle { max_len: None }
    }

    fn guard(&self, w: &Word) -> Result<()> {
        match self.max_len {
            Some(limit) if w.len() > limit => Err(Error::TooLarge {
                len: w.len(),
                limit,
            }),
            _ => Ok(()),
        }
    }

    /// Block borders for `e`, if any block factorization exists.
    pub fn find_factorization(&self, w: &Word, e: &[Letter]) -> Result<Option<Vec<usize>>> {
        self.guard(w)?;
        if e.is_empty() {
            return Err(Error::EmptyExpandingSet);
        }
        let mut member = vec![false; w.alphabet_size()];
        for &a in e {
            if !w.contains(a) {
                return Err(Error::UnknownLetter(a.0));
            }
            member[a.index()] = true;
        }
        let letters = w.letters();
        // 0-based indices of E-occurrences
        let occ: Vec<usize> = (0..letters.len())
            .filter(|&i| member[letters[i].index()])
            .collect();
        let mut search = BlockSearch {
            letters,
            occ: &occ,
            first_block: vec![None; w.alphabet_size()],
            cuts: vec![0],
        };
        Ok(search.extend().then_some(search.cuts))
    }

    pub fn factorization_exists(&self, w: &Word, e: &[Letter]) -> Result<bool> {
        self.find_factorization(w, e).map(|c| c.is_some())
    }

    pub fn min_expanding(&self, w: &Word) -> Result<OracleVerdict> {
        self.guard(w)?;
        let m = w.alphabet_size();
        if m == 0 {
            return Ok(OracleVerdict {
                min_size: 0,
                expanding: Vec::new(),
                cuts: vec![0],
                proper: false,
            });
        }
        assert!(m < 32, "alphabet too large for subset enumeration");
        let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
        masks.sort_by_key(|s| (s.count_ones(), *s));
        for mask in masks {
            let e: Vec<Letter> = (0..m as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(Letter)
                .collect();
            if let Some(cuts) = self.find_factorization(w, &e)? {
                return Ok(OracleVerdict {
                    min_size: e.len(),
                    proper: e.len() < m,
                    expanding: e,
                    cuts,
                });
            }
        }
        unreachable!("the full alphabet always admits the identity factorization")
    }

    pub fn is_primitive(&self, w: &Word) -> Result<bool> {
        self.min_expanding(w).map(|v| v.primitive())
    }
}

struct BlockSearch<'a> {
    letters: &'a [Letter],
    occ: &'a [usize],
    first_block: Vec<Option<(usize, usize)>>,
    cuts: Vec<usize>,
}

impl BlockSearch<'_> {
    /// Places the border after block `cuts.len() - 1` and recurses. Block `b`
    /// covers `letters[cuts[b]..cuts[b+1]]` and must contain `occ[b]`.
    fn extend(&mut self) -> bool {
        let b = self.cuts.len() - 1;
        let q = self.occ.len();
        let n = self.letters.len();
        let start = self.cuts[b];
        let (lo, hi) = if b + 1 == q {
            (n, n)
        } else {
            (self.occ[b] + 1, self.occ[b + 1])
        };
        let key = self.letters[self.occ[b]].index();
        for end in lo..=hi {
            let fresh = match self.first_block[key] {
                Some((s, e)) => {
                    if self.letters[s..e] != self.letters[start..end] {
                        continue;
                    }
                    false
                }
                None => {
                    self.first_block[key] = Some((start, end));
                    true
                }
            };
            self.cuts.push(end);
            if b + 1 == q || self.extend() {
                return true;
            }
            self.cuts.pop();
            if fresh {
                self.first_block[key] = None;
            }
        }
        false
    }
}

fn witness_morphism(w: &Word, e: &[Letter], cuts: &[usize]) -> Morphism {
    let mut images = vec![Vec::new(); w.alphabet_size()];
    for pair in cuts.windows(2) {
        let block = &w.letters()[pair[0]..pair[1]];
        if let Some(&a) = block.iter().find(|a| e.contains(a)) {
            images[a.index()] = block.to_vec();
        }
    }
    Morphism::from_images(images)
}

/// Every nonempty word of length at most `max_len` whose letters, numbered by
/// first appearance, stay below `max_alphabet`: one representative per class
/// of words equal up to renaming letters. Ordered by length, then
/// lexicographically.
pub fn all_words(max_len: usize, max_alphabet: usize) -> AllWords {
    AllWords {
        max_len,
        max_alphabet,
        current: Vec::new(),
    }
}

pub struct AllWords {
    max_len: usize,
    max_alphabet: usize,
    current: Vec<usize>,
}

impl AllWords {
    fn advance(&mut self) -> bool {
        let len = self.current.len();
        if len == 0 {
            if self.max_len == 0 || self.max_alphabet == 0 {
                return false;
            }
            self.current.push(0);
            return true;
        }
        // prefix maxima bound the next letter: w[i] <= max(w[..i]) + 1
        let mut prefix_max = Vec::with_capacity(len);
        let mut m = 0;
        for &x in &self.current {
            m = m.max(x);
            prefix_max.push(m);
        }
        for i in (1..len).rev() {
            let bound = (prefix_max[i - 1] + 1).min(self.max_alphabet - 1);
            if self.current[i] < bound {
                self.current[i] += 1;
                for x in &mut self.current[i + 1..] {
                    *x = 0;
                }
                return true;
            }
        }
        if len < self.max_len {
            self.current = vec![0; len + 1];
            return true;
        }
        false
    }
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.advance() {
            Some(Word::from_ids(self.current.iter().copied()))
        } else {
            None
        }
    }
}
