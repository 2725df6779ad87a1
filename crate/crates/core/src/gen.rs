//! Word families used for benchmarks and tests.

use rand::Rng;

use crate::word::Word;

/// `a_1 a_2 ... a_n a_n ... a_2 a_1`, a morphically primitive palindrome on
/// which every letter must become expanding.
pub fn palindrome_family(n: usize) -> Word {
    Word::from_ids((0..n).chain((0..n).rev()))
}

/// Uniformly random word of length `len` over the first `alphabet` generated
/// letter names. Letters that happen not to occur are absent from the result.
pub fn random_word<R: Rng + ?Sized>(len: usize, alphabet: usize, rng: &mut R) -> Word {
    assert!(alphabet > 0 || len == 0, "empty alphabet");
    Word::from_ids((0..len).map(|_| rng.gen_range(0..alphabet)))
}
