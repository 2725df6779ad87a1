//! Words over a dense interned alphabet, occurrence tables and neighborhoods.
//!
//! Positions are 1-based (`w[1]` is the first letter) and cuts are 0-based:
//! cut `k` is the border following the prefix of length `k`, so a word of
//! length `n` has cuts `0..=n` and cuts `i < j` delimit `w[i+1..=j]`.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// Dense letter identifier, assigned in order of first appearance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// How surface symbols are joined when a word is rendered back to text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    /// One Unicode scalar per letter, rendered without separators.
    Chars,
    /// Whitespace-separated tokens, rendered joined by a single space.
    Tokens,
}

/// Canonical surface name for a generated letter: `a`..`z`, then `x1`, `x2`, ...
pub fn letter_name(id: usize) -> String {
    if id < 26 {
        char::from(b'a' + id as u8).to_string()
    } else {
        format!("x{}", id - 25)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
    symbols: Vec<String>,
    surface: Surface,
}

impl Word {
    /// Interns `symbols`, numbering distinct symbols by first appearance.
    pub fn intern<I, S>(symbols: I, surface: Surface) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut ids: HashMap<String, Letter> = HashMap::new();
        let mut table = Vec::new();
        let letters = symbols
            .into_iter()
            .map(|s| {
                let s = s.as_ref();
                if let Some(&l) = ids.get(s) {
                    return l;
                }
                let l = Letter(table.len() as u32);
                table.push(s.to_owned());
                ids.insert(s.to_owned(), l);
                l
            })
            .collect();
        Word {
            letters,
            symbols: table,
            surface,
        }
    }

    pub fn from_chars(s: &str) -> Self {
        let mut buf = [0u8; 4];
        Self::intern(
            s.chars().map(|c| c.encode_utf8(&mut buf).to_owned()),
            Surface::Chars,
        )
    }

    pub fn from_tokens(s: &str) -> Self {
        Self::intern(s.split_whitespace(), Surface::Tokens)
    }

    /// Builds a word from raw ids, naming id `i` by [`letter_name`]. Ids
    /// need not be dense; they are re-interned by first appearance.
    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let names: Vec<String> = ids.into_iter().map(letter_name).collect();
        let surface = if names.iter().all(|s| s.chars().count() == 1) {
            Surface::Chars
        } else {
            Surface::Tokens
        };
        Self::intern(names, surface)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Size of `alph(w)`.
    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.symbols.len()
    }

    pub fn alphabet(&self) -> impl Iterator<Item = Letter> {
        (0..self.symbols.len() as u32).map(Letter)
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at 1-based position `p`.
    #[inline]
    pub fn at(&self, p: usize) -> Letter {
        self.letters[p - 1]
    }

    /// The factor `w[i+1..=j]` delimited by cuts `i <= j`.
    pub fn between(&self, i: usize, j: usize) -> &[Letter] {
        &self.letters[i..j]
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn symbol(&self, a: Letter) -> &str {
        &self.symbols[a.index()]
    }

    pub fn letter_of(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| Letter(i as u32))
    }

    pub fn contains(&self, a: Letter) -> bool {
        a.index() < self.symbols.len()
    }

    /// Renders a sequence of this word's letters in its surface form.
    pub fn render(&self, seq: &[Letter]) -> String {
        let sep = match self.surface {
            Surface::Chars => "",
            Surface::Tokens => " ",
        };
        seq.iter()
            .map(|&a| self.symbol(a))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&self.letters))
    }
}

/// Occurrence counts `|w|_a` and the table of occurrence positions, stored
/// as one flat array sliced per letter.
#[derive(Clone, Debug)]
pub struct PosIndex {
    offsets: Vec<usize>,
    positions: Vec<usize>,
}

impl PosIndex {
    pub fn build(w: &Word) -> Self {
        let m = w.alphabet_size();
        let mut offsets = vec![0usize; m + 1];
        for &a in w.letters() {
            offsets[a.index() + 1] += 1;
        }
        for i in 0..m {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut positions = vec![0usize; w.len()];
        for (p, &a) in w.letters().iter().enumerate() {
            positions[fill[a.index()]] = p + 1;
            fill[a.index()] += 1;
        }
        PosIndex { offsets, positions }
    }

    /// `|w|_a`.
    #[inline]
    pub fn count(&self, a: Letter) -> usize {
        self.offsets[a.index() + 1] - self.offsets[a.index()]
    }

    /// Ascending 1-based positions of `a`.
    #[inline]
    pub fn occurrences(&self, a: Letter) -> &[usize] {
        &self.positions[self.offsets[a.index()]..self.offsets[a.index() + 1]]
    }

    /// Position of the `i`-th occurrence of `a`, `i >= 1`.
    pub fn pos(&self, a: Letter, i: usize) -> Option<usize> {
        i.checked_sub(1)
            .and_then(|i| self.occurrences(a).get(i))
            .copied()
    }

    pub fn alphabet_size(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// Lengths of the left and right context shared by every occurrence of a
/// letter: `<a> = lambda_a a rho_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Neighborhood {
    pub left_len: usize,
    pub right_len: usize,
}

impl Neighborhood {
    /// Computes the neighborhood of `a` and the number of positions read.
    ///
    /// Each step compares one position per occurrence and stops at the first
    /// disagreement or boundary overrun. Right scans of distinct occurrences
    /// touch disjoint position ranges (the right context never contains `a`),
    /// likewise on the left, so the count never exceeds `2n`.
    pub fn scan(w: &Word, idx: &PosIndex, a: Letter) -> Result<(Self, usize)> {
        if !w.contains(a) {
            return Err(Error::UnknownLetter(a.0));
        }
        let occ = idx.occurrences(a);
        let n = w.len();
        let mut visits = 0;

        let mut right_len = 0;
        'right: loop {
            let k = right_len + 1;
            let mut expected = None;
            for &p in occ {
                if p + k > n {
                    break 'right;
                }
                let b = w.at(p + k);
                visits += 1;
                match expected {
                    None => expected = Some(b),
                    Some(e) if e != b => break 'right,
                    _ => {}
                }
            }
            right_len = k;
        }

        let mut left_len = 0;
        'left: loop {
            let k = left_len + 1;
            let mut expected = None;
            for &p in occ {
                if p <= k {
                    break 'left;
                }
                let b = w.at(p - k);
                visits += 1;
                match expected {
                    None => expected = Some(b),
                    Some(e) if e != b => break 'left,
                    _ => {}
                }
            }
            left_len = k;
        }

        Ok((
            Neighborhood {
                left_len,
                right_len,
            },
            visits,
        ))
    }

    /// The factor `<a>` around the occurrence at 1-based `position`.
    pub fn factor<'w>(&self, w: &'w Word, position: usize) -> &'w [Letter] {
        w.between(position - self.left_len - 1, position + self.right_len)
    }
}

pub fn neighborhood(w: &Word, idx: &PosIndex, a: Letter) -> Result<Neighborhood> {
    Neighborhood::scan(w, idx, a).map(|(nb, _)| nb)
}

/// Leftmost position in `(i, j]` holding a letter of least global frequency.
/// Linear in `j - i`; the factorizer uses its own amortized sweep instead.
pub fn alpha_naive(w: &Word, idx: &PosIndex, i: usize, j: usize) -> Result<usize> {
    if i >= j || j > w.len() {
        return Err(Error::EmptyInterval { i, j });
    }
    let mut best = i + 1;
    for k in i + 2..=j {
        if idx.count(w.at(k)) < idx.count(w.at(best)) {
            best = k;
        }
    }
    Ok(best)
}
