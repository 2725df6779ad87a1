//! The fixed-point factorization engine.
//!
//! State is an expanding set `E` together with the least cut sets `L` and
//! `R` closed under the boundary, delimiting and synchronization rules for
//! `E`. Each round finds the leftmost least-frequent letter of some stretch
//! `(l, r]` with `l ∈ L`, `r ∈ R` that is not yet expanding, adds it to `E`
//! and re-closes `L` and `R`. When no such letter exists, each expanding
//! letter's image is read off the cut sets.
//!
//! Every round is linear in `n`: the violation sweep reads each position at
//! most once, a neighborhood scan reads at most `2n` positions, fewer than
//! `2n` synchronization edges are added, and recompression is linear in cuts
//! plus edges. The counters on [`RoundRecord`] and [`Counters`] record these
//! quantities so callers can check the bounds.

use crate::forest::{Side, SyncForest};
use crate::morphism::Morphism;
use crate::word::{Letter, Neighborhood, PosIndex, Word};
use crate::{Error, Result};

/// Snapshot and work metrics of one round of the main loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub letter: Letter,
    pub neighborhood: Neighborhood,
    /// `L` after the round, ascending.
    pub left_cuts: Vec<usize>,
    /// `R` after the round, ascending.
    pub right_cuts: Vec<usize>,
    pub neighborhood_visits: usize,
    pub edges_added: usize,
    pub recompress_cells: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Positions read by each evaluation of the loop condition, in order.
    pub scans: Vec<usize>,
    pub neighborhood_visits: usize,
    pub edges_added: usize,
    pub recompress_cells: usize,
}

impl Counters {
    /// Number of loop-condition evaluations.
    pub fn evaluations(&self) -> usize {
        self.scans.len()
    }

    pub fn positions_scanned(&self) -> usize {
        self.scans.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub morphism: Morphism,
    pub primitive: bool,
    /// Expanding letters in the order they were added.
    pub expanding: Vec<Letter>,
    pub rounds: Vec<RoundRecord>,
    pub left_cuts: Vec<usize>,
    pub right_cuts: Vec<usize>,
    /// Boundaries of `w = f(w[1]) f(w[2]) ...`.
    pub factor_cuts: Vec<usize>,
    pub counters: Counters,
}

impl FactorizationResult {
    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }
}

pub struct Engine<'w> {
    word: &'w Word,
    index: PosIndex,
    in_e: Vec<bool>,
    expanding: Vec<Letter>,
    forest: SyncForest,
    neighborhoods: Vec<Option<Neighborhood>>,
    counters: Counters,
    rounds: Vec<RoundRecord>,
    // suffix-minimum buffer reused by the violation sweep
    best: Vec<usize>,
}

impl<'w> Engine<'w> {
    /// Empty `E`, with `L = R = {0, n}`.
    pub fn new(word: &'w Word) -> Self {
        let n = word.len();
        let mut forest = SyncForest::new(n);
        for c in [0, n] {
            for side in [Side::L, Side::R] {
                forest.set_flag(c, side).expect("boundary cut in range");
            }
        }
        Engine {
            word,
            index: PosIndex::build(word),
            in_e: vec![false; word.alphabet_size()],
            expanding: Vec::new(),
            forest,
            neighborhoods: vec![None; word.alphabet_size()],
            counters: Counters::default(),
            rounds: Vec::new(),
            best: Vec::new(),
        }
    }

    pub fn word(&self) -> &'w Word {
        self.word
    }

    pub fn index(&self) -> &PosIndex {
        &self.index
    }

    pub fn forest(&self) -> &SyncForest {
        &self.forest
    }

    pub fn expanding(&self) -> &[Letter] {
        &self.expanding
    }

    pub fn is_expanding(&self, a: Letter) -> bool {
        self.in_e.get(a.index()).copied().unwrap_or(false)
    }

    pub fn rounds(&self) -> &[RoundRecord] {
        &self.rounds
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn left_cuts(&self) -> Vec<usize> {
        self.forest.flagged_cuts(Side::L)
    }

    pub fn right_cuts(&self) -> Vec<usize> {
        self.forest.flagged_cuts(Side::R)
    }

    /// Cached neighborhood of `a`, if it has been computed.
    pub fn neighborhood(&self, a: Letter) -> Option<Neighborhood> {
        self.neighborhoods.get(a.index()).copied().flatten()
    }

    /// Adds `a` to `E` and re-closes `L` and `R`.
    ///
    /// For every occurrence `p` of `a`: `p-1 ∈ L`, `p ∈ R`, `p+|ρ| ∈ L`,
    /// `p-|λ|-1 ∈ R`; the cut windows `p-|λ|-1 ..= p+|ρ|` of all occurrences
    /// are synchronized with the window of the first occurrence.
    pub fn expand_letter(&mut self, a: Letter) -> Result<()> {
        if !self.word.contains(a) {
            return Err(Error::UnknownLetter(a.0));
        }
        if self.in_e[a.index()] {
            return Err(Error::AlreadyExpanding(a.0));
        }

        let mut visits = 0;
        let nb = match self.neighborhoods[a.index()] {
            Some(nb) => nb,
            None => {
                let (nb, v) = Neighborhood::scan(self.word, &self.index, a)?;
                self.neighborhoods[a.index()] = Some(nb);
                visits = v;
                nb
            }
        };
        self.in_e[a.index()] = true;
        self.expanding.push(a);

        let occ = self.index.occurrences(a);
        for &p in occ {
            self.forest.set_flag(p - 1, Side::L)?;
            self.forest.set_flag(p, Side::R)?;
            self.forest.set_flag(p + nb.right_len, Side::L)?;
            self.forest.set_flag(p - nb.left_len - 1, Side::R)?;
        }

        let width = nb.left_len + nb.right_len + 2;
        let anchor = occ[0] - nb.left_len - 1;
        let edges = occ[1..].iter().flat_map(|&p| {
            let start = p - nb.left_len - 1;
            (0..width).map(move |t| (anchor + t, start + t))
        });
        self.forest.add_edges(edges)?;
        let edges_added = self.forest.pending_edges();
        let cells = self.forest.recompress();

        self.counters.neighborhood_visits += visits;
        self.counters.edges_added += edges_added;
        self.counters.recompress_cells += cells;
        self.rounds.push(RoundRecord {
            letter: a,
            neighborhood: nb,
            left_cuts: self.left_cuts(),
            right_cuts: self.right_cuts(),
            neighborhood_visits: visits,
            edges_added,
            recompress_cells: cells,
        });
        Ok(())
    }

    /// Evaluates the loop condition: returns the letter `w[α(l, r)]` for the
    /// smallest `l ∈ L` whose next right cut `r > l` yields a non-expanding
    /// letter, or `None` when every such stretch is headed by an expanding
    /// letter.
    ///
    /// The cuts are split into segments `[r', r)` between consecutive right
    /// cuts; every `l ∈ L` in a segment has next right cut `r`. Within a
    /// segment, suffix minima over `(l_min, r]` are built once from the right
    /// and answer `α(l, r)` for each `l` by lookup. Segments are disjoint, so
    /// at most `n` positions are read per call.
    pub fn find_violation(&mut self) -> Option<Letter> {
        let n = self.word.len();
        let mut scanned = 0;
        let mut found = None;
        let mut seg_start = 0;

        'segments: for r in 1..=n {
            if !self.has(r, Side::R) {
                continue;
            }
            let Some(l_min) = (seg_start..r).find(|&c| self.has(c, Side::L)) else {
                seg_start = r;
                continue;
            };
            // best[k - l_min - 1] = α(k - 1, r) for k in l_min+1 ..= r
            let span = r - l_min;
            self.best.clear();
            self.best.resize(span, 0);
            let mut cur = r;
            for k in (l_min + 1..=r).rev() {
                if self.freq(k) <= self.freq(cur) {
                    cur = k;
                }
                self.best[k - l_min - 1] = cur;
            }
            scanned += span;

            for l in l_min..r {
                if !self.has(l, Side::L) {
                    continue;
                }
                let k = self.best[l - l_min];
                let letter = self.word.at(k);
                if !self.in_e[letter.index()] {
                    found = Some(letter);
                    break 'segments;
                }
            }
            seg_start = r;
        }

        self.counters.scans.push(scanned);
        found
    }

    #[inline]
    fn has(&self, c: usize, side: Side) -> bool {
        self.forest.has_flag(c, side).expect("cut in range")
    }

    #[inline]
    fn freq(&self, p: usize) -> usize {
        self.index.count(self.word.at(p))
    }

    /// Image of an expanding letter, read at its first occurrence.
    pub fn image(&self, a: Letter) -> Result<Vec<Letter>> {
        self.image_at(a, 1)
    }

    /// Image of `a` read at its `i`-th occurrence `k`: `w[k-i'..=k+j]` where
    /// `i'` is least with `k-i'-1 ∈ R`, and `j` is greatest with `k+j ∈ R`
    /// and no cut of `L` among `k, ..., k+j-1`.
    pub fn image_at(&self, a: Letter, occurrence: usize) -> Result<Vec<Letter>> {
        if !self.is_expanding(a) {
            return Err(Error::NotExpanding(a.0));
        }
        let k = self
            .index
            .pos(a, occurrence)
            .ok_or(Error::UnknownLetter(a.0))?;
        let n = self.word.len();

        // cut 0 ∈ R and cut n ∈ L bound both scans
        let start = (0..k)
            .rev()
            .find(|&c| self.has(c, Side::R))
            .expect("cut 0 is a right cut");
        let mut end = k;
        for c in k..=n {
            if self.has(c, Side::R) {
                end = c;
            }
            if self.has(c, Side::L) {
                break;
            }
        }
        Ok(self.word.between(start, end).to_vec())
    }

    /// Runs the main loop to completion.
    pub fn run_to_fixpoint(&mut self) {
        while let Some(a) = self.find_violation() {
            self.expand_letter(a)
                .expect("violating letter is a fresh letter of the word");
        }
    }

    /// Builds the morphism from the current state. Non-expanding letters map
    /// to the empty word.
    pub fn finish(self) -> FactorizationResult {
        let images = self
            .word
            .alphabet()
            .map(|a| {
                if self.is_expanding(a) {
                    self.image(a).expect("expanding letter")
                } else {
                    Vec::new()
                }
            })
            .collect();
        let morphism = Morphism::from_images(images);
        let factor_cuts = morphism.factor_cuts(self.word);
        FactorizationResult {
            primitive: self.expanding.len() == self.word.alphabet_size(),
            left_cuts: self.left_cuts(),
            right_cuts: self.right_cuts(),
            morphism,
            factor_cuts,
            expanding: self.expanding,
            rounds: self.rounds,
            counters: self.counters,
        }
    }
}

/// Decides morphic primitivity of `w` and returns an idempotent morphism
/// fixing `w` with the fewest expanding letters.
pub fn run(w: &Word) -> FactorizationResult {
    let mut engine = Engine::new(w);
    engine.run_to_fixpoint();
    engine.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::{left_right_cut_check, verify};

    const EXAMPLE: &str = "caabcaadeaabeaad";

    fn letter(w: &Word, s: &str) -> Letter {
        w.letter_of(s).unwrap()
    }

    fn symbols(w: &Word, letters: &[Letter]) -> Vec<String> {
        letters.iter().map(|&a| w.symbol(a).to_owned()).collect()
    }

    #[test]
    fn example_round_one() {
        let w = Word::from_chars(EXAMPLE);
        let mut e = Engine::new(&w);
        assert_eq!(e.left_cuts(), [0, 16]);
        assert_eq!(e.right_cuts(), [0, 16]);
        let c = e.find_violation().unwrap();
        assert_eq!(w.symbol(c), "c");
        e.expand_letter(c).unwrap();
        assert_eq!(e.left_cuts(), [0, 3, 4, 7, 16]);
        assert_eq!(e.right_cuts(), [0, 1, 4, 5, 16]);
        assert_eq!(e.rounds()[0].edges_added, 4);
    }

    #[test]
    fn example_rounds() {
        let w = Word::from_chars(EXAMPLE);
        let mut e = Engine::new(&w);
        let mut picked = Vec::new();
        while let Some(a) = e.find_violation() {
            picked.push(w.symbol(a).to_owned());
            e.expand_letter(a).unwrap();
        }
        assert_eq!(picked, ["c", "b", "d", "e"]);

        let r = e.rounds();
        assert_eq!(r[1].left_cuts, [0, 3, 4, 7, 11, 12, 16]);
        assert_eq!(r[1].right_cuts, [0, 1, 4, 5, 9, 12, 16]);
        // cut 13 joins R in round 3 through the window synchronized with cut 5
        assert_eq!(r[2].left_cuts, [0, 3, 4, 7, 8, 11, 12, 15, 16]);
        assert_eq!(r[2].right_cuts, [0, 1, 4, 5, 8, 9, 12, 13, 16]);
        assert_eq!(r[3].left_cuts, r[2].left_cuts);
        assert_eq!(r[3].right_cuts, r[2].right_cuts);

        for (s, img) in [("b", "aab"), ("c", "c"), ("d", "aad"), ("e", "e")] {
            let a = letter(&w, s);
            assert_eq!(w.render(&e.image(a).unwrap()), img);
            assert_eq!(w.render(&e.image_at(a, 2).unwrap()), img);
        }
        assert!(matches!(
            e.image(letter(&w, "a")),
            Err(Error::NotExpanding(1))
        ));

        let res = e.finish();
        assert!(!res.primitive);
        assert_eq!(res.morphism.render(&w), "c↦c, a↦ε, b↦aab, d↦aad, e↦e");
        assert_eq!(res.factor_cuts, [0, 1, 4, 5, 8, 9, 12, 13, 16]);
        assert_eq!(res.counters.evaluations(), 5);
    }

    #[test]
    fn abaaba() {
        let w = Word::from_chars("abaaba");
        let res = run(&w);
        assert!(!res.primitive);
        assert_eq!(res.round_count(), 1);
        assert_eq!(symbols(&w, &res.expanding), ["b"]);
        assert_eq!(res.left_cuts, [0, 1, 3, 4, 6]);
        assert_eq!(res.right_cuts, [0, 2, 3, 5, 6]);
        assert_eq!(res.morphism.render(&w), "a↦ε, b↦aba");
        assert!(verify(&w, &res.morphism));
        assert!(left_right_cut_check(
            &w,
            &res.morphism,
            &res.left_cuts,
            &res.right_cuts
        ));
    }

    #[test]
    fn abba_is_primitive() {
        let w = Word::from_chars("abba");
        let mut e = Engine::new(&w);
        let a = e.find_violation().unwrap();
        assert_eq!(w.symbol(a), "a");
        e.expand_letter(a).unwrap();
        assert_eq!(e.left_cuts(), [0, 1, 3, 4]);
        assert_eq!(e.right_cuts(), [0, 1, 3, 4]);
        let b = e.find_violation().unwrap();
        assert_eq!(w.symbol(b), "b");
        e.expand_letter(b).unwrap();
        assert_eq!(e.find_violation(), None);
        let res = e.finish();
        assert!(res.primitive);
        assert_eq!(res.round_count(), 2);
        assert!(res.morphism.is_identity());
    }

    #[test]
    fn trivial_words() {
        let w = Word::from_chars("a");
        let res = run(&w);
        assert!(res.primitive);
        assert_eq!(res.round_count(), 1);
        assert!(res.morphism.is_identity());

        let w = Word::from_chars("");
        let res = run(&w);
        assert!(res.primitive);
        assert_eq!(res.round_count(), 0);
        assert_eq!(res.counters.evaluations(), 1);
        assert_eq!(res.left_cuts, [0]);
    }

    #[test]
    fn expand_errors() {
        let w = Word::from_chars("ab");
        let mut e = Engine::new(&w);
        e.expand_letter(Letter(0)).unwrap();
        assert!(matches!(
            e.expand_letter(Letter(0)),
            Err(Error::AlreadyExpanding(0))
        ));
        assert!(matches!(
            e.expand_letter(Letter(5)),
            Err(Error::UnknownLetter(5))
        ));
    }

    #[test]
    fn single_occurrence_adds_no_edges() {
        let w = Word::from_chars("aabaa");
        let mut e = Engine::new(&w);
        e.expand_letter(letter(&w, "b")).unwrap();
        let r = &e.rounds()[0];
        assert_eq!(r.edges_added, 0);
        assert_eq!(
            r.neighborhood,
            Neighborhood {
                left_len: 2,
                right_len: 2
            }
        );
        // delimiting cuts 2∈L, 3∈R; neighborhood borders 5∈L, 0∈R
        assert_eq!(r.left_cuts, [0, 2, 5]);
        assert_eq!(r.right_cuts, [0, 3, 5]);
    }
}
